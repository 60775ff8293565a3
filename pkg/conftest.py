"""Configure Django for pytest (the suite is written for Django's test runner)."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
django.setup()

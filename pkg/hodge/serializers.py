from fractions import Fraction

from rest_framework import serializers

from .polyring import BivariatePolynomial, FactoredRational


class FractionField(serializers.Field):
    """Точное рациональное число в виде строки "p/q" (или "p" для целых)"""

    default_error_messages = {
        'invalid': 'Ожидается рациональное число вида "p/q".',
    }

    def to_representation(self, value):
        return str(Fraction(value))

    def to_internal_value(self, data):
        try:
            return Fraction(str(data))
        except (ValueError, ZeroDivisionError):
            self.fail('invalid')


class PolynomialField(serializers.Field):
    """Многочлен как отсортированный список троек [deg_u, deg_v, "p/q"]"""

    default_error_messages = {
        'invalid': 'Ожидается список троек [deg_u, deg_v, "p/q"].',
        'duplicate': 'Моном ({deg_u}, {deg_v}) указан дважды.',
        'negative': 'Степени должны быть неотрицательными.',
    }

    def to_representation(self, value: BivariatePolynomial):
        return value.to_triples()

    def to_internal_value(self, data):
        if not isinstance(data, (list, tuple)):
            self.fail('invalid')
        terms = {}
        for triple in data:
            if not isinstance(triple, (list, tuple)) or len(triple) != 3:
                self.fail('invalid')
            deg_u, deg_v, coeff = triple
            if not isinstance(deg_u, int) or not isinstance(deg_v, int):
                self.fail('invalid')
            if deg_u < 0 or deg_v < 0:
                self.fail('negative')
            if (deg_u, deg_v) in terms:
                self.fail('duplicate', deg_u=deg_u, deg_v=deg_v)
            try:
                terms[(deg_u, deg_v)] = Fraction(str(coeff))
            except (ValueError, ZeroDivisionError):
                self.fail('invalid')
        return BivariatePolynomial(terms)


class DenominatorFactorSerializer(serializers.Serializer):
    factor = PolynomialField()
    mult = serializers.IntegerField(min_value=1)


class FactoredRationalSerializer(serializers.Serializer):
    """{"num": <многочлен>, "den": [{"factor": <многочлен>, "mult": k}, ...]}"""
    num = PolynomialField(source='numerator')
    den = DenominatorFactorSerializer(source='factors', many=True)

    def validate_den(self, value):
        for item in value:
            if not item['factor'].constant_term:
                raise serializers.ValidationError('Множитель знаменателя должен иметь ненулевой свободный член.')
        return value

    def create(self, validated_data) -> FactoredRational:
        return FactoredRational(
            validated_data['numerator'],
            [(item['factor'], item['mult']) for item in validated_data['factors']],
        )


class StratumReportSerializer(serializers.Serializer):
    genus = serializers.IntegerField()
    stratum = serializers.CharField()
    dim = serializers.IntegerField(source='expected_dim')
    e = FactoredRationalSerializer(source='e_poly')
    dim_check = serializers.BooleanField()
    symmetric = serializers.BooleanField()


class BreakdownEntrySerializer(serializers.Serializer):
    J = serializers.ListField(child=serializers.IntegerField())
    e_open = FactoredRationalSerializer()
    weight_exponents = serializers.ListField(child=serializers.IntegerField())


class StringyReportSerializer(serializers.Serializer):
    genus = serializers.IntegerField()
    euler = FractionField()
    euler_formula = FractionField()
    euler_correction = FractionField()
    euler_is_integer = serializers.BooleanField()
    is_polynomial = serializers.BooleanField()
    is_crepant = serializers.BooleanField()
    e_st = FactoredRationalSerializer()
    breakdown = BreakdownEntrySerializer(many=True)
    e_ms_theorem_delta = FactoredRationalSerializer(allow_null=True)


class VerificationOutcomeSerializer(serializers.Serializer):
    check_name = serializers.CharField()
    anchor = serializers.CharField()
    genus = serializers.IntegerField()
    status = serializers.CharField(source='status.value')
    passed = serializers.BooleanField()
    subject = serializers.CharField()
    delta = FactoredRationalSerializer(allow_null=True)
    detail = serializers.CharField(allow_blank=True)


class EulerRowSerializer(serializers.Serializer):
    genus = serializers.IntegerField()
    euler_exact = FractionField()
    euler_formula = FractionField()
    match = serializers.BooleanField()


class DivisorRowSerializer(serializers.Serializer):
    genus = serializers.IntegerField()
    J = serializers.ListField(child=serializers.IntegerField())
    kind = serializers.CharField()
    e = FactoredRationalSerializer()
    is_polynomial = serializers.BooleanField()
    value_at_one = FractionField()

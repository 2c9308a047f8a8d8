from rest_framework import serializers

from amplitudes.types import OAMWindow, QuadratureConfig
from common.exceptions import SpdcError
from engineering.presets import TARGETS, target_preset
from engineering.types import TargetState
from modes.types import PumpSpec
from phasematching.types import EXPERIMENTAL, IDEALIZED, SETUP_MODES, CrystalSpec, SetupParams
from scenarios.presets import DEFAULT_SETUP, SETUPS, setup_preset
from scenarios.types import CSV, OUTPUT_FORMATS


def _domain_error(exc: SpdcError, fallback):
    """Turn a domain precondition failure into a field-keyed validation error."""
    fields = [key for key in exc.details if key not in ('mode',)] or [fallback]
    return serializers.ValidationError({fields[0]: [exc.message]})


class StrictSerializer(serializers.Serializer):
    """Serializer that rejects keys it does not declare."""

    def to_internal_value(self, data):
        if isinstance(data, dict):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({key: ['Unknown field.'] for key in unknown})
        return super().to_internal_value(data)


class SetupSerializer(StrictSerializer):
    """Physical setup: a preset, optionally overridden field by field, or explicit values."""
    preset = serializers.ChoiceField(choices=sorted(SETUPS), required=False)
    mode = serializers.ChoiceField(choices=SETUP_MODES, required=False)
    lambda_p = serializers.FloatField(required=False)
    w_p = serializers.FloatField(required=False)
    w_s = serializers.FloatField(required=False)
    w_i = serializers.FloatField(required=False)
    L = serializers.FloatField(required=False)
    refractive_index = serializers.FloatField(required=False)
    k_p = serializers.FloatField(required=False)
    k_s = serializers.FloatField(required=False)
    k_i = serializers.FloatField(required=False)

    def validate(self, attrs):
        explicit = set(attrs) - {'preset'}
        base = setup_preset(attrs.get('preset', DEFAULT_SETUP)) if 'preset' in attrs or not explicit else None
        try:
            return self._build(base, attrs)
        except SpdcError as exc:
            raise _domain_error(exc, 'setup')

    @staticmethod
    def _build(base, attrs):
        def value(name):
            return attrs.get(name, getattr(base, name, None))

        mode = attrs.get('mode', base.mode if base else EXPERIMENTAL)
        required = ('lambda_p', 'w_p', 'L') if mode == IDEALIZED else ('lambda_p', 'w_p', 'L', 'w_s', 'w_i')
        missing = [name for name in required if value(name) is None]
        if missing:
            raise serializers.ValidationError({name: ['This field is required.'] for name in missing})
        if mode == IDEALIZED:
            unused = sorted(set(attrs) & {'w_s', 'w_i', 'refractive_index', 'k_p', 'k_s', 'k_i'})
            if unused:
                raise serializers.ValidationError({name: ['Not used by idealized setups.'] for name in unused})
            return SetupParams.idealized(w_p=value('w_p'), L=value('L'), lambda_p=value('lambda_p'))

        wavenumbers = {name: attrs[name] for name in ('k_p', 'k_s', 'k_i') if name in attrs}
        if base is not None and 'refractive_index' not in attrs:
            # keep the preset's refractive index when only the wavelength changes
            ratio = base.lambda_p / value('lambda_p')
            for name in ('k_p', 'k_s', 'k_i'):
                wavenumbers.setdefault(name, getattr(base, name) * ratio)
        if 'refractive_index' in attrs:
            wavenumbers['refractive_index'] = attrs['refractive_index']
        return SetupParams.experimental(lambda_p=value('lambda_p'), w_p=value('w_p'), w_s=value('w_s'),
                                        w_i=value('w_i'), L=value('L'), **wavenumbers)


class PumpTermSerializer(StrictSerializer):
    ell = serializers.IntegerField()
    re = serializers.FloatField()
    im = serializers.FloatField(required=False, default=0.0)


class PumpSerializer(StrictSerializer):
    w_p = serializers.FloatField(required=False)
    terms = PumpTermSerializer(many=True)

    def validate_terms(self, value):
        ells = [term['ell'] for term in value]
        repeated = sorted({ell for ell in ells if ells.count(ell) > 1})
        if repeated:
            raise serializers.ValidationError(f"Duplicate pump OAM index: {repeated}.")
        return value


class CrystalSerializer(StrictSerializer):
    variant = serializers.ChoiceField(choices=['periodic', 'cosine', 'poling'])
    c = serializers.ListField(child=serializers.FloatField(), required=False)
    sigma = serializers.FloatField(required=False)
    signs = serializers.ListField(child=serializers.IntegerField(), required=False)
    domain_width = serializers.FloatField(required=False)

    def validate(self, attrs):
        if attrs['variant'] == 'cosine' and not attrs.get('c'):
            raise serializers.ValidationError({'c': ['Cosine crystals need coefficients.']})
        if attrs['variant'] == 'poling' and ('signs' not in attrs or 'domain_width' not in attrs):
            raise serializers.ValidationError({'signs': ['Poled crystals need signs and domain_width.']})
        return attrs


class WindowSerializer(StrictSerializer):
    ell_min = serializers.IntegerField()
    ell_max = serializers.IntegerField()

    def validate(self, attrs):
        if attrs['ell_min'] > attrs['ell_max']:
            raise serializers.ValidationError({'ell_max': ['Must not be below ell_min.']})
        return attrs


class QuadratureSerializer(StrictSerializer):
    radial_nodes = serializers.IntegerField(required=False, min_value=8)
    azimuthal_nodes = serializers.IntegerField(required=False, min_value=8)
    qmax_factor = serializers.FloatField(required=False)
    tolerance = serializers.FloatField(required=False)


class OutputSerializer(StrictSerializer):
    directory = serializers.CharField(required=False)
    format = serializers.ChoiceField(choices=OUTPUT_FORMATS, required=False, default=CSV)


class TargetTermSerializer(StrictSerializer):
    ls = serializers.IntegerField()
    li = serializers.IntegerField()
    re = serializers.FloatField()
    im = serializers.FloatField(required=False, default=0.0)


class TargetSerializer(StrictSerializer):
    d = serializers.IntegerField()
    name = serializers.CharField(required=False, default='')
    terms = TargetTermSerializer(many=True)

    def validate(self, attrs):
        try:
            return TargetState.from_payload(attrs)
        except SpdcError as exc:
            raise _domain_error(exc, 'terms')


class EngineeringSerializer(StrictSerializer):
    N = serializers.IntegerField(required=False, min_value=0)
    engineer_crystal = serializers.BooleanField(required=False, default=True)


class PolingSerializer(StrictSerializer):
    n_domains = serializers.IntegerField(required=False, min_value=64, default=2000)


class ScenarioSerializer(StrictSerializer):
    """
    Top-level scenario document.

    setup, pump, crystal and target also accept a bare string: a setup preset name,
    "gaussian", "periodic" or a target preset name.
    """
    setup = serializers.JSONField(required=False)
    pump = serializers.JSONField(required=False)
    crystal = serializers.JSONField(required=False)
    target = serializers.JSONField(required=False)
    window = WindowSerializer(required=False)
    quadrature = QuadratureSerializer(required=False)
    d = serializers.IntegerField(required=False)
    output = OutputSerializer(required=False)
    engineering = EngineeringSerializer(required=False)
    poling = PolingSerializer(required=False)

    @staticmethod
    def _nested(serializer_class, data):
        serializer = serializer_class(data=data)
        if not serializer.is_valid():
            raise serializers.ValidationError(serializer.errors)
        return serializer.validated_data

    def validate_d(self, value):
        if value < 3 or value % 2 == 0:
            raise serializers.ValidationError('Must be an odd integer >= 3.')
        return value

    def validate_setup(self, value):
        if isinstance(value, str):
            value = {'preset': value}
        return self._nested(SetupSerializer, value)

    def validate_target(self, value):
        if isinstance(value, str):
            if value not in TARGETS:
                raise serializers.ValidationError(f'Unknown target preset "{value}".')
            return target_preset(value)
        return self._nested(TargetSerializer, value)

    def validate_crystal(self, value):
        if isinstance(value, str):
            value = {'variant': value}
        return self._nested(CrystalSerializer, value)

    def validate_pump(self, value):
        if value == 'gaussian':
            return {'terms': [{'ell': 0, 're': 1.0, 'im': 0.0}]}
        return self._nested(PumpSerializer, value)

    def validate(self, attrs):
        setup = attrs.get('setup') or setup_preset()
        try:
            return self._assemble(setup, attrs)
        except SpdcError as exc:
            raise _domain_error(exc, 'scenario')

    @staticmethod
    def _assemble(setup, attrs):
        pump_data = attrs.get('pump') or {'terms': [{'ell': 0, 're': 1.0, 'im': 0.0}]}
        pump = PumpSpec(terms={t['ell']: complex(t['re'], t.get('im', 0.0)) for t in pump_data['terms']},
                        w_p=pump_data.get('w_p', setup.w_p))

        crystal_data = dict(attrs.get('crystal') or {'variant': 'periodic'})
        variant = crystal_data.pop('variant')
        if variant == 'periodic':
            crystal = CrystalSpec.periodic(setup.L)
        elif variant == 'cosine':
            crystal = CrystalSpec.cosine(crystal_data['c'], setup.L, crystal_data.get('sigma'))
        else:
            crystal = CrystalSpec.poling(crystal_data['signs'], crystal_data['domain_width'], setup.L)

        window_data = attrs.get('window') or {'ell_min': -3, 'ell_max': 3}
        quad_defaults = QuadratureConfig.from_settings().as_payload()
        quad = QuadratureConfig(**{**quad_defaults, **attrs.get('quadrature', {})})
        output = attrs.get('output') or {}
        engineering = attrs.get('engineering') or {}
        target = attrs.get('target')
        d = attrs.get('d') or (target.d if target is not None else 3)
        return {
            'setup': setup,
            'pump': pump,
            'crystal': crystal,
            'window': OAMWindow(window_data['ell_min'], window_data['ell_max']),
            'quad': quad,
            'd': d,
            'output_dir': output.get('directory'),
            'output_format': output.get('format', CSV),
            'target': target,
            'N': engineering.get('N'),
            'engineer_crystal': engineering.get('engineer_crystal', True),
            'n_domains': (attrs.get('poling') or {}).get('n_domains', 2000),
        }

from duality_lab.common.errors import UnknownTypeError
from duality_lab.processes.algebraic import AlgebraicGenerator
from duality_lab.processes.diffusion import BepGenerator, DifGenerator
from duality_lab.processes.generator import MarkovGenerator
from duality_lab.processes.hyperbolic import HypGenerator
from duality_lab.processes.jump import IrwGenerator, SepGenerator, SipGenerator
from duality_lab.processes.process_spec import ProcessFamily, ProcessSpec


class GeneratorsLoader:
    generator_classes = {}

    @staticmethod
    def load_generator(type_name: str, spec: ProcessSpec) -> MarkovGenerator:
        try:
            type_name = ProcessFamily(type_name)
        except ValueError:
            raise UnknownTypeError(f"Unknown type name given for generators loader [type: {type_name}]")
        if type_name not in GeneratorsLoader.generator_classes.keys():
            raise UnknownTypeError(f"Unknown type name given for generators loader [type: {type_name.value}]")
        return GeneratorsLoader.generator_classes[type_name].create_generator(spec)

    @staticmethod
    def register_generator(clazz: type):
        if not issubclass(clazz, MarkovGenerator) or not hasattr(clazz, "process_family"):
            raise UnknownTypeError("Invalid class given for generators loader")
        GeneratorsLoader.generator_classes[clazz.process_family()] = clazz


def build_generator_direct(spec: ProcessSpec) -> MarkovGenerator:
    return GeneratorsLoader.load_generator(spec.family.value, spec)


def build_generator_algebraic(spec: ProcessSpec) -> AlgebraicGenerator:
    return AlgebraicGenerator.create_generator(spec)


GeneratorsLoader.register_generator(IrwGenerator)
GeneratorsLoader.register_generator(SipGenerator)
GeneratorsLoader.register_generator(SepGenerator)
GeneratorsLoader.register_generator(DifGenerator)
GeneratorsLoader.register_generator(BepGenerator)
GeneratorsLoader.register_generator(HypGenerator)

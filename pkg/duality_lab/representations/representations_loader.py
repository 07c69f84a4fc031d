from duality_lab.common.errors import UnknownTypeError
from duality_lab.representations.representation import Representation, RepresentationType


class RepresentationsLoader:
    representation_classes = {}

    @staticmethod
    def load_representation(type_name: str, config: dict) -> Representation:
        try:
            type_name = RepresentationType(type_name)
        except ValueError:
            raise UnknownTypeError(f"Unknown type name given for representations loader [type: {type_name}]")
        if type_name not in RepresentationsLoader.representation_classes.keys():
            raise UnknownTypeError(f"Unknown type name given for representations loader [type: {type_name.value}]")
        return RepresentationsLoader.representation_classes[type_name].create_representation(config)

    @staticmethod
    def register_representation(clazz: type):
        if not issubclass(clazz, Representation):
            raise UnknownTypeError("Invalid class given for representations loader")
        RepresentationsLoader.representation_classes[clazz.representation_type()] = clazz

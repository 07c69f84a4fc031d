from duality_lab.common.errors import UnknownTypeError
from duality_lab.kernels.duality_kernel import DualityKernel, KernelFamily


class KernelsLoader:
    kernel_classes = {}

    @staticmethod
    def load_kernel(type_name: str, config: dict) -> DualityKernel:
        try:
            type_name = KernelFamily(type_name)
        except ValueError:
            raise UnknownTypeError(f"Unknown type name given for kernels loader [type: {type_name}]")
        if type_name not in KernelsLoader.kernel_classes.keys():
            raise UnknownTypeError(f"Unknown type name given for kernels loader [type: {type_name.value}]")
        return KernelsLoader.kernel_classes[type_name].create_kernel(config)

    @staticmethod
    def register_kernel(clazz: type):
        if not issubclass(clazz, DualityKernel):
            raise UnknownTypeError("Invalid class given for kernels loader")
        KernelsLoader.kernel_classes[clazz.kernel_family()] = clazz

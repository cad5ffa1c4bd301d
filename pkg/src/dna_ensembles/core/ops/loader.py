__docformat__ = "google"

from importlib import import_module
from importlib.metadata import entry_points
from pkgutil import iter_modules

OP_PACKAGES = ("dna_ensembles.core.ops",)

_INFRASTRUCTURE = {"base", "registry", "loader"}


def load_ops(registry, packages=OP_PACKAGES):
    loaded_modules = set()
    for package_name in packages:
        package = import_module(package_name)
        modules = sorted(iter_modules(package.__path__), key=lambda item: item.name)
        for module_info in modules:
            if module_info.name in _INFRASTRUCTURE:
                continue
            module_name = f"{package_name}.{module_info.name}"
            if module_name in loaded_modules:
                continue
            loaded_modules.add(module_name)

            module = import_module(module_name)
            register = getattr(module, "register_ops", None)
            if register is not None:
                register(registry)

    discovered = entry_points()
    op_entries = (
        discovered.select(group="dna_ensembles.core.ops")
        if hasattr(discovered, "select")
        else discovered.get("dna_ensembles.core.ops", ())
    )
    for entry_point in op_entries:
        plugin = entry_point.load()
        register = getattr(plugin, "register_ops", plugin if callable(plugin) else None)
        if register is not None:
            register(registry)

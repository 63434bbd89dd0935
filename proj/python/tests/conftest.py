import importlib.machinery
import importlib.util
import os
import pathlib
import sys

# Under ctest the freshly built extension is named explicitly, so an installed
# copy (for example an editable install) cannot shadow it.
_module_dir = os.environ.get("RESATLAS_MODULE_DIR")
if _module_dir:
    for suffix in importlib.machinery.EXTENSION_SUFFIXES:
        candidate = pathlib.Path(_module_dir) / f"resatlas{suffix}"
        if candidate.exists():
            spec = importlib.util.spec_from_file_location("resatlas", candidate)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            sys.modules["resatlas"] = module
            break
    else:
        raise RuntimeError(f"no resatlas extension in {_module_dir}")

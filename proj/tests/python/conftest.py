import os
import sys

# The built extension lives in the CMake build tree during development;
# installed wheels import the package normally instead.
_module_dir = os.environ.get("NEUROEVO_MODULE_DIR")
if _module_dir and _module_dir not in sys.path:
    sys.path.insert(0, _module_dir)

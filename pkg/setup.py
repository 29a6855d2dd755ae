import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# implementation in dyckbaker._kernels.pure when the extension is absent.
ext_modules = []
if os.environ.get("DYCKBAKER_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "dyckbaker._kernels._core",
                    ["src/dyckbaker/_kernels/_core.pyx"],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)

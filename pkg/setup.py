"""Build the optional compiled kernels.

    pip install -e . --no-build-isolation

If Cython or a C compiler is unavailable the package still installs and
falls back to the numpy kernels in ``lleproj._fallback``.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("LLEPROJ_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext = Extension(
            "lleproj._kernels",
            ["src/lleproj/_kernels.pyx"],
            include_dirs=[np.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            extra_compile_args=["-O3", "-ffp-contract=off"],
        )
        ext_modules = cythonize(
            [ext],
            language_level=3,
            compiler_directives={"boundscheck": False, "wraparound": False,
                                 "cdivision": True},
        )

setup(ext_modules=ext_modules)

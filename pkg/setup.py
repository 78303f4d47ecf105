import os
import sys

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("MDRC_NO_EXTENSION", "") in ("", "0"):
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        print("Cython/numpy unavailable at build time; installing pure-Python kernel only", file=sys.stderr)
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "mdrc.sim._kernel",
                    ["src/mdrc/sim/_kernel.pyx"],
                    include_dirs=[np.get_include()],
                    # keep a*b + c unfused so both kernels round identically
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)

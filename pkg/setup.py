"""Build script: compiles the optional event-loop extension.

The package works without the extension (a pure-Python engine is selected
at import time), so a failed compile only costs speed.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/riotsched/sim/_engine_c.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-host dependent
    print(f"riotsched: skipping compiled engine ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)

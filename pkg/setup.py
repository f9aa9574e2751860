"""Build the optional compiled series kernel.

The package works without it; ``thetaderiv.engine`` falls back to the
pure-Python kernel when the extension cannot be imported.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "thetaderiv.engine._ckernel",
                ["src/thetaderiv/engine/_ckernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

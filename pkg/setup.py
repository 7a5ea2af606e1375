"""Build the optional compiled enumeration kernel.

The extension is marked optional: if Cython or a C compiler is missing the
package still installs and falls back to the numpy implementation.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "artifact._isokernel",
                ["src/artifact/_isokernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

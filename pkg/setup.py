"""Build the optional compiled blow-up kernel.

Without Cython (or a C compiler) the package installs as pure Python and the
fallback in ``npiclass._blowup_py`` is used at run time.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("npiclass._blowup", ["src/npiclass/_blowup.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

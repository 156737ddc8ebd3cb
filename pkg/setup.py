"""Build hook for the optional compiled search kernel.

The package is fully functional without it; csmatch.fd.engine falls back
to the pure-Python kernel when the extension is absent.
"""

import os

from setuptools import Extension, setup

PYX = "src/csmatch/fd/_kernel_cy.pyx"

ext_modules = []
if os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("csmatch.fd._kernel_cy", [PYX], optional=True)],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "initializedcheck": False,
                "cdivision": True,
            },
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)

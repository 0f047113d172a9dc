#!/usr/bin/python
from setuptools import setup
from permbinom import __version__

setup (name='permbinom',
        version=__version__,
        install_requires = [
            'tornado',
            'numpy',
            'gmpy2',
        ],
        extras_require = {
            'test': [
                'pytest',
                'hypothesis',
                'sympy',
            ],
        },
        entry_points = {
            'console_scripts': [
                'permbinom=permbinom.cli:main',
            ]
        },
	packages = [
            'permbinom',
        ],
)

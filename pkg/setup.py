# -*- coding: utf-8 -*-

from setuptools import find_packages
from setuptools import setup


setup(
    name='noether-dho',
    version='0.1.0.dev0',
    description="Noether symmetries and first integrals of the damped "
                "harmonic oscillator",
    classifiers=[
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords='Noether symmetry Lie algebra damped oscillator',
    license='MIT',
    packages=find_packages('.', exclude=['ez_setup', 'tests']),
    package_dir={'': '.'},
    package_data={'noether_dho': ['defaults.yaml']},
    include_package_data=True,
    zip_safe=False,
    install_requires=[
        'setuptools',
        'Click>=7.0,<8.2',
        'pyyaml',
        'sympy>=1.5',
        'numpy>=1.17',
    ],
    entry_points={
        'console_scripts': [
            'dho=noether_dho.cli:cli'
        ],
    }
)

#!/usr/bin/env python3
"""
Setup script for the path algebra Groebner toolkit.

    pip install .          installs the package and the ``qgb`` command
    python setup.py init   creates the working directories for results and logs
"""

import os

from setuptools import Command, find_packages, setup

HERE = os.path.dirname(os.path.abspath(__file__))
TEST_ONLY = ('pytest',)


def read_requirements():
    """Runtime requirements from requirements.txt, test tools split off."""
    with open(os.path.join(HERE, 'requirements.txt'), 'r', encoding='utf-8') as handle:
        lines = [line.strip() for line in handle if line.strip() and not line.startswith('#')]
    runtime = [line for line in lines if not line.startswith(TEST_ONLY)]
    tests = [line for line in lines if line.startswith(TEST_ONLY)]
    return runtime, tests


class InitCommand(Command):
    """Create the directories the runners write into."""

    description = "create data, results and logs directories"
    user_options = []
    directories = ["data/problems", "data/golden", "results", "logs"]

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        for directory in self.directories:
            os.makedirs(os.path.join(HERE, directory), exist_ok=True)
            print(f"✓ Created {directory}")


RUNTIME, TESTS = read_requirements()

setup(
    name="path-algebra-groebner",
    version="0.1.0",
    description="Exact Groebner bases for ideals in quiver path algebras over the rationals",
    python_requires=">=3.9",
    packages=find_packages(include=['src', 'src.*']),
    py_modules=['run_groebner', 'run_worked_examples'],
    install_requires=RUNTIME,
    extras_require={'test': TESTS},
    entry_points={
        'console_scripts': [
            'qgb=src.frontend.cli:main',
        ],
    },
    cmdclass={'init': InitCommand},
)

import setuptools
import os
import sys

here = os.path.abspath(os.path.dirname(__file__))
sys.path.insert(0, os.path.join(here, 'cytrace'))
from version import __version__

print(f'Version {__version__}')

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="cytrace",
    version=__version__,
    author="cytrace developers",
    description="Exact checks for cyclic bar constructions, edgewise subdivision, the index category and big Witt vectors",
    long_description=long_description,
    long_description_content_type="text/markdown",
    install_requires = [
        'numpy>=1.19.1',
        'outdated>=0.2.0',
        'pandas>=1.1.0',
        'tqdm>=4.53.0',
        'scipy>=1.5.4',
        'sympy>=1.13',
    ],
    extras_require={
        'test': ['pytest>=6.0'],
    },
    entry_points={
        'console_scripts': ['cytrace=cytrace.cli:main'],
    },
    license='MIT',
    packages=setuptools.find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
    classifiers=[
        'Topic :: Scientific/Engineering :: Mathematics',
        'Intended Audience :: Science/Research',
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
    ],
    python_requires='>=3.8',
)

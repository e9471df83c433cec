"""
LatticeFlow trains deep networks on rank-1 lattice points and computes the weights,
generating vectors and error bounds that make the lattice training points effective.
"""
import re
from setuptools import setup, find_packages


with open('latticeflow/__init__.py', 'r') as f:
    version = re.search(r'^__version__\s*=\s*[\'"]([^\'"]*)[\'"]', f.read(), re.MULTILINE).group(1)


with open('README.md', 'r') as f:
    long_description = f.read()


setup(
    name='latticeflow',
    packages=find_packages(exclude=['examples']),
    version=version,
    license='Apache License 2.0',
    description='Lattice training points, tailored weights and generalization bounds for deep networks',
    long_description=long_description,
    long_description_content_type="text/markdown",
    zip_safe=False,
    platforms='any',
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.17',
        'scipy>=1.3',
        'pandas>=0.24',
        'dill>=0.2.7',
        'tqdm>=4.19.7',
        'matplotlib>=3.0',
        'multiprocess>=0.70',
    ],
    extras_require={
        'test': [
            'pytest>=6.0',
        ],
    },
    entry_points={
        'console_scripts': ['latticeflow=latticeflow.cli:main'],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics'
    ],
)

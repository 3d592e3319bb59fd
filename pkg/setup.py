from setuptools import setup
import pathlib

here = pathlib.Path(__file__).parent.resolve()

# The long description is the package description in description.md.
long_description = (here / 'description.md').read_text(encoding='utf-8')

# Bump this together with fluxgo.__version__.
version='0.1.0'
setup(
    name='fluxgo',
    version=version,
    description='A ready-to-go Python toolbox for the energy flux of squeezed states in 1+1 dimensions',
    author='FluxGo developers',
    maintainer='FluxGo developers',

    # Shown as the project page body; markdown, so the content type must be given.
    long_description=long_description,
    long_description_content_type='text/markdown',

    classifiers=[
        'Development Status :: 4 - Beta',
        'License :: OSI Approved :: MIT License',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',
        'Programming Language :: Python :: 3.7'
    ],
    keywords='quantum inequality, squeezed states, energy flux, Schwarzian derivative',

    # A single flat package; the scripts directory is not installed.
    packages=['fluxgo'],
    python_requires='>=3.7',

    # numba compiles the mollifier kernel; scipy does quadrature, root finding and
    # the direct search; pandas writes the CSV tables.
    install_requires=['numpy',
                        'scipy',
                        'pandas',
                        'numba'
        ],

    # pytest runs the tests directory, mpi4py the parallel scripts.
    extras_require={
        'tests': ['pytest'],
        'mpi': ['mpi4py'],
    },

    # The command line is installed as `fluxgo`.
    entry_points={
        'console_scripts': ['fluxgo=fluxgo.cli:main'],
    },
)

from os import path
from setuptools import setup, find_packages

this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(
    name='swemesh',
    version='0.1.0',
    description='High-order energy-stable shallow-water solver on '
                'adaptive moving meshes',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Physics'
    ],
    keywords='shallow-water finite-difference weno moving-mesh',
    packages=find_packages(include=['swemesh', 'swemesh.*']),
    python_requires='>=3.7',
    install_requires=[
        'numpy>=1.16',
        'pyyaml>=5.1',
        'tqdm>=4.36'
    ],
    extras_require={
        'test': ['pytest>=5.0', 'hypothesis>=4.36'],
        'docs': ['sphinx>=2.2', 'sphinx_rtd_theme>=0.4']
    },
    entry_points={
        'console_scripts': ['swemesh=swemesh.cli:main']
    }
)

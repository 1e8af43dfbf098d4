from setuptools import setup, find_packages

with open("README.md", 'r', encoding = 'utf-8') as fp:
    readme = fp.read()

CLASSIFIERS = """\
Development Status :: 3 - Alpha
Intended Audience :: Science/Research
Intended Audience :: Developers
License :: OSI Approved :: Apache Software License
Programming Language :: Python
Programming Language :: Python :: 3
Programming Language :: Python :: 3.8
Programming Language :: Python :: 3.9
Programming Language :: Python :: 3.10
Programming Language :: Python :: 3.11
Programming Language :: Python :: 3 :: Only
Topic :: Scientific/Engineering :: Mathematics
Operating System :: Microsoft :: Windows
Operating System :: POSIX
Operating System :: Unix
"""

setup(
    name = "carlesonlite",
    version = "0.1.0",
    description= "Carleson-Lite. Finite-rank verification of a hypercyclic rank-one perturbation "
                 "of a unitary operator built on a Carleson set.",
    long_description = readme,
    long_description_content_type="text/markdown",
    classifiers=[_f for _f in CLASSIFIERS.split('\n') if _f],
    packages = find_packages(exclude=['test', 'test.*']),
    install_requires=['numpy',
                      'scipy'],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['carlesonlite=carlesonlite.cli:main']},
    zip_safe = False,
    python_requires='>=3.8',
)

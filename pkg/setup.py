import os
from setuptools import setup
from omega import __version__

setup(
    name="django-omega",
    version='.'.join(str(x) for x in __version__),
    description="Exact consistent maps on the places of number fields, and the extensions of the prime omega "
                "function they define. Packaged as a Django app with management commands.",
    long_description=open(os.path.join(os.path.dirname(__file__), "README.markdown")).read(),
    zip_safe=False,
    long_description_content_type="text/markdown",
    packages=[
        "omega",
        "omega.management",
        "omega.management.commands",
    ],
    install_requires=[
        "django>=3.2",
        "sympy>=1.12",
    ],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Framework :: Django",
    ],
)

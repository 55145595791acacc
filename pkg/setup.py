import os

from setuptools import find_packages, setup

here = os.path.abspath(os.path.dirname(__file__))

os.chdir(here)

version_contents = {}
with open(os.path.join(here, "padic_cauchy", "version.py"), encoding="utf-8") as f:
    exec(f.read(), version_contents)

setup(
    name="padic-cauchy",
    version=version_contents["__version__"],
    description="Series solutions of p-adic Cauchy problems and their checks.",
    author="padic-cauchy developers",
    packages=find_packages(exclude=["tests", "tests.*"]),
    include_package_data=True,
    license="Apache 2",
    python_requires=">=3.8",
    install_requires=[
        "python-dotenv >= 0.15.0",
        "dataclasses-json >= 0.5.3",
        "sympy >= 1.8",
    ],
    entry_points={"console_scripts": ["padic-cauchy = padic_cauchy.cli:main"]},
    test_suite="./tests",
    tests_require=["pytest", "pytest-mock", "hypothesis"],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3 :: Only",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    zip_safe=False,
)

from setuptools import setup, find_packages

with open("VERSION") as f:
    version = f.read().strip()

with open("requirements/requirements.txt") as f:
    install_requires = [line.strip() for line in f if line.strip() and not line.startswith("#")]

setup(
    name="graph_entropy",
    version=version,
    description="Volume entropy, entropy-minimizing metrics and path-growth checks for metric graphs",
    author="Equipo Entropia",
    packages=find_packages(exclude=["tests"]),
    package_data={"graph_entropy": ["config/*.yml"]},
    install_requires=install_requires,
    python_requires=">=3.10",
)

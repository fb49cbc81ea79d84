#!/usr/bin/env python

from setuptools import setup, find_packages

version="0.3.0"

# changes

# 0.3.0 bench harness, --compare-epsilon, limid info
# 0.2.2 parentless transformation only above a policy count threshold
# 0.2.1 fix lifting of strategies through transformed parents
# 0.2.0 approximate solver (epsilon), random/urn/partition/sat generators
# 0.1.1 reverse topological order
# 0.1.0 exact solver, minimization, json documents

# Read requirements from txt file
with open('requirements.txt') as f:
    required = f.read().splitlines()


setup(
    name='limid',
    version=version,
    description='Maximum expected utility of limited memory influence diagrams',
    packages=['limid'] + ['limid.%s' % submod for submod in find_packages('limid')],
    install_requires=[req for req in required if req],
    entry_points={
        'console_scripts': ['limid = limid.cli:main'],
    },
)

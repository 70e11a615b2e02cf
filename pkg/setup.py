# coding: utf-8
# (c) Copyright The markoff toolkit authors 2026

import sys
from os import path
from setuptools import find_packages, setup

# pylint: disable=wrong-import-position
from markoff.version import VERSION

# Import README.md into long_description
pwd = path.abspath(path.dirname(__file__))

with open(path.join(pwd, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()


def check_python():
    """ Validate that we run on a Python new enough for the package """
    if sys.version_info < (3, 8):
        exit('markoff requires Python 3.8 or newer.')


check_python()

setup(name='markoff',
      version=VERSION,
      license='MIT',
      author='The markoff toolkit authors',
      description='Markoff surfaces mod p, the modular curves they cover and Nielsen classes of finite groups',
      packages=find_packages(exclude=['tests', 'examples']),
      package_data={'markoff': ['data/groups/*.grp']},
      long_description=long_description,
      long_description_content_type='text/markdown',
      zip_safe=False,
      python_requires='>=3.8',
      install_requires=['fysom>=2.1.2',
                        'numpy>=1.20',
                        'sympy>=1.7'],
      entry_points={
                    'console_scripts': ['markoff = markoff.cli:main'],
                    },
      keywords=['markoff', 'number-theory', 'finite-fields', 'modular-curves', 'nielsen-classes'],
      classifiers=[
          'Development Status :: 4 - Beta',
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: MIT License',
          'Operating System :: OS Independent',
          'Programming Language :: Python',
          'Programming Language :: Python :: 3',
          'Topic :: Scientific/Engineering :: Mathematics'])

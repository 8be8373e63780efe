from setuptools import setup
from version import get_git_version

setup(name='gtdih-python',
      version=get_git_version(),
      description='GT-shadows for the dihedral poset of PB_3',
      install_requires=['sympy', 'numpy', 'pyyaml', 'progressbar2'],
      tests_require=['pytest'],
      extras_require={'test': ['pytest']},
      packages=['gtdih'],
      scripts=['scripts/gtdih.py'],
      python_requires='>=3.9',
      zip_safe=False)

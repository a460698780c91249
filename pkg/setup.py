from setuptools import setup
from version import get_git_version

try:
    version = get_git_version()
    assert version is not None
except (ValueError, AssertionError):
    version = '0.0.0'

setup(name='qfi-pyutils',
      version=version,
      description='Entanglement detection with quantum Fisher information '
                  'versus variance criteria',
      packages=['qfiutils'],
      package_data={
          'qfiutils': ['conf/*'],
          },
      python_requires='>=3.9',
      install_requires=[
          'numpy',
          'pyyaml',
          ],
      tests_require=[
          'coverage',
          'pytest',
          'hypothesis',
          ],
      entry_points='''
          [console_scripts]
          qfi-ent=qfiutils.qfi_cli:main
      ''',
      zip_safe=False)

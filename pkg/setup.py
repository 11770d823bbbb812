import tenreg

from setuptools import setup
from setuptools import find_packages

setup_warnings = list()


def read_md(file):
    try:
        from pypandoc import convert
    except ImportError:
        setup_warnings.append(
            "warning: 'pypandoc' not found, could not convert Markdown to RST")
        import codecs
        return codecs.open(file, 'r', 'utf-8').read()
    else:
        return convert(file, 'rst')


setup(name='tenreg',
      version=tenreg.__revision__,
      description='Multilinear tensor regression for relational panel data',
      long_description=read_md('README.md'),
      classifiers=[
          'Development Status :: 3 - Alpha',
          'License :: OSI Approved :: Apache Software License',
          'Programming Language :: Python :: 3',
          'Intended Audience :: Science/Research',
          'Topic :: Scientific/Engineering :: Mathematics',
      ],
      keywords='tensor regression array normal gibbs relational data',
      license='Apache License 2.0',
      platforms=["any"],
      packages=find_packages(exclude=['examples', 'examples.*']),
      install_requires=[
          'numpy',
          'scipy',
          'pandas',
      ],
      entry_points={
          'console_scripts': ['tenreg=tenreg.cli:main'],
      },
      setup_requires=['pytest-runner'],
      tests_require=['pytest', 'pytest-benchmark'],
      include_package_data=True,
      zip_safe=False)

print("\n".join(setup_warnings))

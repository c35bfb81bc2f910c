from setuptools import setup, find_packages

import prigraph

setup(
    name='prigraph',
    version=prigraph.__version__,
    author='The prigraph developers',
    # Package info
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    python_requires='>=3.8',
    install_requires=['numpy', 'scipy', 'pandas', 'matplotlib', 'networkx',
                      'requests'],
    extras_require={
        'tests': ['pytest', 'scikit-learn>=1.1'],
    },
    package_data={
        "": ["README.md"]
    },
    license='GPL3',
    description='Elastic principal graphs grown by graph grammars, with accuracy-complexity plots.',
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    entry_points={
        "console_scripts": [
            "prigraph = prigraph.__main__:main"
        ]
    },
)

import io
from os import path

from setuptools import find_packages
from setuptools import setup


here = path.abspath(path.dirname(__file__))


def read(*names, **kwargs):
    return io.open(
        path.join(here, *names),
        encoding=kwargs.get('encoding', 'utf8')
    ).read()


long_description = read('README.md')
requirements = [line for line in read('requirements.txt').split('\n') if line.strip()]
optional_requirements = {}

setup(
    name='acsim',
    version='0.1.0',
    description='Actor-critic optimization of black-box simulation models with entropy-regularized design distributions.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='MIT license',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
        'License :: OSI Approved :: MIT License',
        'Operating System :: Unix',
        'Operating System :: POSIX',
        'Operating System :: Microsoft :: Windows',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: Implementation :: CPython',
    ],
    keywords=['optimization', 'simulation', 'actor-critic', 'reinforcement learning'],
    project_urls={},
    packages=find_packages('src'),
    package_dir={'': 'src'},
    package_data={'acsim': ['data/*.txt']},
    data_files=[],
    include_package_data=True,
    zip_safe=False,
    install_requires=requirements,
    python_requires='>=3.8',
    extras_require=optional_requirements,
    entry_points={
        'console_scripts': ['acsim=acsim.cli.__main__:main'],
    },
    ext_modules=[],
)

import setuptools
import subprocess
from setuptools.command.develop import develop
from dickex.version import __VERSION__

# shim to install dev depenedencies on 'setup.py develop'
class ExtDevelop(develop):
    def install_for_development(self):
        from distutils import log
        develop.install_for_development(self)
        if 'develop' in self.distribution.extras_require:
            log.info('\nInstalling development dependencies')
            requirements = ' '.join(self.distribution.extras_require['develop'])
            proc = subprocess.Popen('pip install ' + requirements, shell=True)
            proc.wait()


setuptools.setup(
    name='dickex',
    version=__VERSION__,
    description='Closed-form dynamics of atomic ensembles coupled to few-photon fields',
    long_description=open('README.md').read().strip(),
    packages=['dickex'],
    test_suite='tests',
    python_requires='>=3.8',
    install_requires=[
        'pragma_utils',
        'numpy',
        'scipy',
    ],
    extras_require={
       'develop': [
           'pytest',
           'pytest-cov',
           'hypothesis',
       ],
    },
    entry_points={
        'console_scripts': [
            'dickex = dickex.cli:main',
        ],
    },
    cmdclass= {
       'develop': ExtDevelop,
    },
    license='MIT License',
    zip_safe=False,
    keywords='dicke w-state quantum-optics quantum-memory simulation',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics',
    ])

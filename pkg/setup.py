from setuptools import setup, find_packages

PACKAGENAME = "PCGLabPy"
DESCRIPTION = ("Python scripts for quality gating and outcome screening of "
               "phonocardiogram recordings")
AUTHOR = "PCGLabPy developers"
AUTHOR_EMAIL = ""

version = {}
with open("PCGLabPy/version.py") as fp:
    exec(fp.read(), version)

setup(
    name=PACKAGENAME,
    packages=find_packages(),
    version=version['__version__'],
    description=DESCRIPTION,
    license='BSD3',
    install_requires=[
        'scipy',
        'numpy',
        'tqdm',
        'pandas>=1.5.0',
        'numba',
        'PyYAML',
        'packaging',
        'librosa>=0.9',
    ],
    setup_requires=['pytest-runner', ],
    tests_require=['pytest', ],
    author=AUTHOR,
    author_email=AUTHOR_EMAIL,
    entry_points={'console_scripts': [
        'pcg_synth = PCGLabPy.scripts.pcg_synth:main',
        'pcg_preprocess = PCGLabPy.scripts.pcg_preprocess:main',
        'pcg_quality_train = PCGLabPy.scripts.pcg_quality_train:main',
        'pcg_quality_gate = PCGLabPy.scripts.pcg_quality_gate:main',
        'pcg_pretrain = PCGLabPy.scripts.pcg_pretrain:main',
        'pcg_train = PCGLabPy.scripts.pcg_train:main',
        'pcg_evaluate = PCGLabPy.scripts.pcg_evaluate:main',
        'generate_pcg_config = PCGLabPy.scripts.generate_pcg_config:main',
    ]}
)

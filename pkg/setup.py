import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="py4slice",
    version="0.0.1",
    author="The py4slice Authors",
    description="Trace-driven guaranteed-bit-rate prediction for 5G network slices",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license='MIT License',
    keywords=['5g', 'network slicing', 'qos', 'bandwidth prediction', 'simulation', 'video analytics'],
    packages=setuptools.find_packages(exclude=['tests', 'test_utils']),
    include_package_data=True,
    package_data={'py4slice': ['configs/*.json']},
    install_requires=[
        'pandas>=1.5',
        'numpy',
    ],
    entry_points={
        'console_scripts': ['py4slice=py4slice.cli:main'],
    },
    classifiers=[
        'Intended Audience :: Science/Research',
        'Intended Audience :: Developers',
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        'Topic :: System :: Networking',
        'Topic :: Scientific/Engineering :: Information Analysis',
    ],
    python_requires='>=3.8',
    test_suite='tests',
)

# How to build distribution: https://packaging.python.org/tutorials/packaging-projects/

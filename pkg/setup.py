#!/usr/bin/env python3

# Copyright (c) 2026 nv-cqed contributors
#
# This program is free software: you can redistribute it and/or modify it under the
# terms of the GNU Affero General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A
# PARTICULAR PURPOSE. See the GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License along
# with this program. If not, see <https://www.gnu.org/licenses/>.

import os
import sys
from setuptools import setup

# Version may be given on the command line
version = "1.0.0"
for argument in sys.argv:
    if argument.startswith("--version="):
        version = argument.split("=")[1]
        # remove it. setup doesn't need it.
        sys.argv.remove(argument)

with open('README.md', 'r') as rf:
    long_description = rf.read()


def get_data_files() -> list:
    data_files = [('share/nv-cqed', ['README.md'])]
    conf_dir = 'conf'
    for root, _, file_names in os.walk(conf_dir):
        src_files = [root + "/" + a_file for a_file in file_names]
        if len(src_files) != 0:
            data_files.append(('share/nv-cqed/' + root, src_files))
    return data_files


def get_packages() -> list:
    ignore_list = ['test', '__pycache__']
    packages = ['cqed']
    package_root = 'cqed'
    for root, directories, _ in os.walk(package_root):
        for a_dir in directories:
            package = root + '/' + a_dir
            package = package.replace('/', '.')
            if len(set(package.split('.')).intersection(set(ignore_list))) == 0:
                packages.append(package)
    return packages


with open('requirements.txt', 'r') as rf:
    install_requires = [line.strip() for line in rf if line.strip() and not line.startswith('#')]

setup(name='nv-cqed',
      version=version,
      license='AGPLv3',
      description='Cumulant and exact simulation of optically cooled NV spin ensembles in a microwave cavity',
      package_dir={'cqed': 'cqed'},
      packages=get_packages(),
      package_data={
        'cqed': ['conf/*.yaml', 'conf/*.json'],
      },
      data_files=get_data_files(),
      install_requires=install_requires,
      entry_points={
        'console_scripts': ['cqed=cqed.cli.cqed_cli:main'],
      },
      long_description=long_description,
      zip_safe=False,
      python_requires='>=3.8')

# -*- coding: utf-8 -*-
#
#
# This source code is licensed under the GPL license found in the
# LICENSE file in the root directory of this source tree.

description = 'Exact finite-stage certificates for fat Cantor sets, their ring premeasure and Hausdorff covers'

version_info = (0, 1, 0)

__version__ = '.'.join(map(str, version_info))

__license__ = 'GPLv3'
__author__ = 'fatcantor developers'

__email__ = ''

classifiers = [
    'Development Status :: 3 - Alpha',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: GPLv3 License',
    'Programming Language :: Python :: 3',
    'Programming Language :: Python :: 3.8',
    'Programming Language :: Python :: 3.9',
    'Programming Language :: Python :: 3.10',
    'Topic :: Scientific/Engineering :: Mathematics',
]

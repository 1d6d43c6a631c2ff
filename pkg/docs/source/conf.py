# Sphinx configuration for the ogaprox docs

import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join('..', '..', 'src')))

project = 'ogaprox'
copyright = '2026, ogaprox developers'
author = 'ogaprox developers'
release = '0.1'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.mathjax',
]

autodoc_member_order = 'bysource'
autodoc_mock_imports = ['matplotlib', 'tqdm']

templates_path = ['_templates']
exclude_patterns = []

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']

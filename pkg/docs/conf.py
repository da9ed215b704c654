# flake8: noqa
# -*- coding: utf-8 -*-

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '../src'))

import acsim

# -- General configuration ------------------------------------------------

project = 'acsim'
copyright = 'acsim developers'
author = 'acsim developers'
release = acsim.__version__
version = '.'.join(release.split('.')[0:2])

master_doc = 'index'
source_suffix = ['.rst']
exclude_patterns = ['_build']
pygments_style = 'sphinx'
add_module_names = True

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
]

# -- autodoc / autosummary ------------------------------------------------

autodoc_default_options = {
    'undoc-members': True,
    'show-inheritance': True,
}
autodoc_member_order = 'bysource'
autoclass_content = 'class'
autosummary_generate = True


def skip_private(app, what, name, obj, would_skip, options):
    if name.startswith('_'):
        return True
    return would_skip


def setup(app):
    app.connect('autodoc-skip-member', skip_private)


# -- napoleon: numpy docstrings only --------------------------------------

napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_param = False
napoleon_use_rtype = False

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}

# -- HTML -----------------------------------------------------------------

html_theme = 'alabaster'
html_static_path = []
html_copy_source = False
html_show_sourcelink = False

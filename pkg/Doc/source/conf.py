#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# qfi-pyutils documentation build configuration file.

import sys
import os
sys.path.insert(0, os.path.abspath('../..'))

import version as ver

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
]

napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_include_init_with_doc = True
napoleon_include_special_with_doc = True

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
}

templates_path = ['.templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'qfi-pyutils'
copyright = u'2026, qfi-pyutils developers'
author = u'qfi-pyutils developers'

try:
    version = ver.get_git_version()
except ValueError:
    version = '0.0.0'
release = version

exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['.static']
htmlhelp_basename = 'qfi-pyutilsdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    (master_doc, 'qfi-pyutils.tex', u'qfi-pyutils Documentation',
     author, 'manual'),
]

man_pages = [
    (master_doc, 'qfi-pyutils', u'qfi-pyutils Documentation',
     [author], 1)
]

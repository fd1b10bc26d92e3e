# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('./..'))


# -- Project information -----------------------------------------------------

project = 'py4slice'
copyright = '2026, The py4slice Authors'
author = 'The py4slice Authors'

# The short X.Y version
version = '0.0.1'
# The full version, including alpha/beta/rc tags
release = '0.0.1'


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx.ext.autosummary',
    'sphinx_autodoc_typehints',
    'sphinx_rtd_theme',
]

add_module_names = False
napoleon_use_param = True
autosummary_generate = True

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = None
exclude_patterns = ['_build', '_templates', 'schemas']
pygments_style = None


# -- Options for HTML output -------------------------------------------------

import sphinx_rtd_theme
html_theme = "sphinx_rtd_theme"
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_theme_options = {
    'prev_next_buttons_location': 'both',
    'style_external_links': True,
}
htmlhelp_basename = 'py4slicedoc'


# -- Options for LaTeX output ------------------------------------------------

latex_documents = [
    (master_doc, 'py4slice.tex', 'py4slice Documentation',
     'The py4slice Authors', 'manual'),
]

man_pages = [
    (master_doc, 'py4slice', 'py4slice Documentation',
     [author], 1)
]

texinfo_documents = [
    (master_doc, 'py4slice', 'py4slice Documentation',
     author, 'py4slice', 'Trace-driven GBR prediction for 5G network slices',
     'Miscellaneous'),
]

epub_title = project
epub_exclude_files = ['search.html']

# -*- coding: utf-8 -*-
#
# gaplab documentation build configuration file.

import sys
import pathlib

root = pathlib.Path(__file__)
sys.path.insert(0, str(root.parent))
sys.path.insert(0, str(root.parent.parent))

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'check_list',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'gaplab'
copyright = '2024, the gaplab developers'
author = 'the gaplab developers'

version = '0.1'
release = '0.1'

rst_epilog = '.. |project| replace:: *%s*' % project

language = 'en'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
todo_include_todos = False

html_theme = 'alabaster'
html_show_sourcelink = False
htmlhelp_basename = 'gaplabdoc'

latex_documents = [
    (master_doc, 'gaplab.tex', 'gaplab Documentation', author, 'manual'),
]

man_pages = [
    (master_doc, 'gaplab', 'gaplab Documentation', [author], 1)
]

# -*- coding: utf-8 -*-
#
# limid documentation build configuration file
#
# pytest skips this file (see pytest.ini), sphinx-build runs it from docs/.

import sys, os

# the package is documented from the source tree
sys.path.insert(0, os.path.abspath('..'))

import limid

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.doctest',
    'sphinx.ext.autosummary',
    'sphinx.ext.mathjax',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'limid'
copyright = u'2026, limid developers'

# The short X.Y version.
version = '.'.join(limid.__version__.split('.')[:2])
# The full version, including alpha/beta/rc tags.
release = limid.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

autodoc_member_order = 'bysource'

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'limiddoc'

latex_documents = [
  ('index', 'limid.tex', u'limid Documentation', u'limid developers', 'manual'),
]
man_pages = [
    ('index', 'limid', u'limid Documentation', [u'limid developers'], 1)
]

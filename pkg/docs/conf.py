# LatticeFlow documentation build configuration
import sys
sys.path.append("..")
import latticeflow


extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.intersphinx',
    'sphinx.ext.napoleon',
]

source_suffix = ['.rst']
master_doc = 'index'

project = 'LatticeFlow'
author = 'LatticeFlow developers'
copyright = '2024, ' + author
release = latticeflow.__version__
version = '.'.join(release.split('.')[:2])

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
html_theme = 'sphinx_rtd_theme'

autoclass_content = 'class'
add_module_names = False

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
}

import importlib.util
import os
import sys

# keep src/ importable before the package is installed; after an editable
# install the installed package (with its compiled kernel) wins
if importlib.util.find_spec("pursuit") is None:
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))
sys.path.insert(0, os.path.dirname(__file__))

"""
Module for containing all the `FeatureExtractor` subclasses.
Each subclass is one family of quality features and should contain
documentation describing its columns.

To create a new `FeatureExtractor` simply create a new file in this
directory, containing a class that inherits from `FeatureExtractor`. The
`FeatureChain` will automatically find any `FeatureExtractor` inside this
directory, and add it as a link in the chain, ordered by its `order`
attribute.
"""

__all__ = []

import importlib
import inspect
import pkgutil

for _, name, is_pkg in pkgutil.iter_modules(__path__):
    if is_pkg or name.startswith('_'):
        continue
    module = importlib.import_module("{}.{}".format(__name__, name))

    for key, value in inspect.getmembers(module, inspect.isclass):
        if value.__module__ != module.__name__:
            continue
        globals()[key] = value
        __all__.append(key)

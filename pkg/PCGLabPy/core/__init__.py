"""
Base classes shared by the pipelines: feature extractors and their chain,
classifiers and the factory that selects them by name.
"""
from inspect import isabstract


def child_subclasses(base):
    """
    Return all non-abstract subclasses of a base class, at any depth.

    Classes are returned in definition order (depth first). When two
    classes share a name, the first one found is kept, so a subclass
    redefined by a reloaded module does not appear twice in a registry.

    Parameters
    ----------
    base : class
        high level class object that is inherited by the
        desired subclasses

    Returns
    -------
    children : list
        list of non-abstract subclasses
    """
    children = []
    seen = set()
    stack = list(reversed(base.__subclasses__()))
    while stack:
        cls = stack.pop()
        stack.extend(reversed(cls.__subclasses__()))
        if isabstract(cls) or cls.__name__ in seen:
            continue
        seen.add(cls.__name__)
        children.append(cls)
    return children

from PCGLabPy.core import child_subclasses
from PCGLabPy.core.classifier import Classifier, MODEL_SCHEMA_VERSION
from PCGLabPy.core.errors import SchemaMismatch


class Factory:
    """
    Factory to provide a list of subclasses for a base class, and allow its
    selection at runtime.
    """
    subclasses = None  # Factory.child_subclasses(ParentClass)
    subclass_names = None  # [c.__name__ for c in subclasses]

    @classmethod
    def produce(cls, product_name, *args, **kwargs):
        print("Obtaining {} from {}".format(product_name, cls.__name__))
        factory = cls()
        subclass_dict = dict(zip(factory.subclass_names, factory.subclasses))

        try:
            product = subclass_dict[product_name]
        except KeyError:
            msg = ('No product found with name "{}" '
                   'for factory.'.format(product_name))
            raise KeyError(msg)

        return product(*args, **kwargs)


class ClassifierFactory(Factory):
    import PCGLabPy.classifiers
    subclasses = child_subclasses(Classifier)
    subclass_names = [c.__name__ for c in subclasses]

    @classmethod
    def load(cls, d):
        """
        Rebuild a fitted classifier from its serialised form, selecting the
        subclass by its `kind` tag.

        Parameters
        ----------
        d : dict
            Output of `Classifier.to_dict`
        """
        version = d.get('schema_version')
        if version != MODEL_SCHEMA_VERSION:
            raise SchemaMismatch("Unsupported model schema version: {}"
                                 .format(version))
        kinds = {c.kind: c for c in cls.subclasses if c.kind is not None}
        try:
            product = kinds[d['kind']]
        except KeyError:
            raise KeyError('No classifier of kind "{}"'.format(d['kind']))
        return product.from_dict(d)

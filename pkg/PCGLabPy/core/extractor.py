from inspect import getmembers
import numpy as np


class column:
    """
    Class to be used as a descriptor, identifying the features to be added
    to the feature vector.

    The `registry` attribute keeps track of all columns that have been
    defined, so feature names stay globally unique.
    """
    registry = dict()

    def __init__(self, func=None):
        self.func = func
        self.__doc__ = func.__doc__
        self.names = [func.__name__]
        self._register(func)

    def _register(self, func):
        for name in self.names:
            if name in self.registry:
                old_func = self.registry[name].__qualname__
                new_func = func.__qualname__
                if old_func != new_func:
                    raise AttributeError("Duplicate FeatureExtractor column "
                                         "name between {} and {}"
                                         .format(old_func, new_func))
            self.registry[name] = func

    def __get__(self, obj, obj_type=None):
        if obj is None:
            return self
        if self.func is None:
            raise AttributeError("unreadable attribute")
        if obj.context is None:
            cn = obj.__class__.__name__
            raise ValueError("FeatureExtractor {} not prepared".format(cn))
        return self.func(obj)

    def values(self, obj):
        return [float(getattr(obj, self.func.__name__))]


class multicolumn(column):
    """
    A column that produces several named features at once. The decorated
    method returns a sequence with one value per name.

    >>> @multicolumn(["band_a", "band_b"])
    >>> def band(self):
    >>>     return [0.4, 0.6]
    """
    def __init__(self, names):
        self._pending_names = list(names)
        self.func = None

    def __call__(self, func):
        self.func = func
        self.__doc__ = func.__doc__
        self.names = self._pending_names
        self._register(func)
        return self

    def values(self, obj):
        values = np.asarray(getattr(obj, self.func.__name__), dtype=float)
        if values.size != len(self.names):
            raise ValueError("{} returned {} values for {} names".format(
                self.func.__qualname__, values.size, len(self.names)
            ))
        return list(values)


def _process_null(_):
    """
    Placeholder for an efficient replacement for when no columns of a
    `FeatureExtractor` are activated.
    """
    return dict()


class FeatureExtractorMeta(type):
    """
    Metaclass to define the `columns` attribute of a `FeatureExtractor`
    before its initialisation.
    """
    def __new__(mcs, name, bases, dct):
        columns = []
        for p, v in dct.items():
            if not isinstance(v, column):
                continue

            # Check if column is inherited from a parent
            try:
                for parent in bases:
                    parent_mem = dict(getmembers(parent))
                    if p in parent_mem and isinstance(parent_mem[p], column):
                        raise ValueError("Inherited")
            except ValueError:
                continue

            columns.append(p)
        dct['columns'] = columns

        return type.__new__(mcs, name, bases, dct)


class FeatureExtractor(metaclass=FeatureExtractorMeta):
    columns = None  # Created by metaclass
    order = 100  # Position of the family inside the feature vector

    def __init__(self, _disable_by_default=False, **kwargs):
        """
        Base class for all FeatureExtractors. Each subclass is one family
        of quality features; its `column` methods are the named features.

        Parameters
        ----------
        _disable_by_default : bool
            Set all columns to be inactive by default
        kwargs
            Columns can be deactivated by passing their "name"=False via the
            kwargs. Configuration to the `FeatureExtractor` can also be
            passed via kwargs.
        """
        self.context = None
        self.kwargs = kwargs

        self.active_columns = self.get_active_columns(
            _disable_by_default=_disable_by_default, **kwargs
        )

        if len(self.columns) == 0:
            self.process = _process_null

    @classmethod
    def get_active_columns(cls, _disable_by_default=False, **kwargs):
        """
        Parse the `kwargs` to check if the user has requested a column to be
        deactivated.

        Returns
        -------
        list
            List of the active columns
        """
        default = not _disable_by_default
        return [col for col in cls.columns if kwargs.get(col, default)]

    @property
    def feature_names(self):
        """
        Names of the features produced by the active columns, in order.
        """
        return [
            n for c in self.active_columns
            for n in getattr(type(self), c).names
        ]

    def _prepare(self, context):
        """
        Prepare the `FeatureExtractor` for a new recording.

        Parameters
        ----------
        context : `PCGLabPy.feature_extractors.context.SignalContext`
            Shared, lazily computed intermediate results of the recording
            (envelope, segmentation, periodogram...)
        """
        self.context = context

    def _get_dict(self):
        d = {}
        for c in self.active_columns:
            descriptor = getattr(type(self), c)
            d.update(zip(descriptor.names, descriptor.values(self)))
        return d

    def _post(self):
        self.context = None

    def process(self, context):
        """
        Extract the features of one recording.

        Parameters
        ----------
        context : SignalContext

        Returns
        -------
        d : dict
            Feature values keyed by feature name
        """
        self._prepare(context)
        d = self._get_dict()
        self._post()
        return d

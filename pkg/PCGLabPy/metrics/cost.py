import os
import numpy as np
import yaml
from PCGLabPy.core.errors import ConfigError

DEFAULT_COST = dict(
    c_algorithm=10.0,
    c_treatment=10000.0,
    c_error=50000.0,
    a0=25.0,
    a1=397.0,
    a2=-1718.0,
    a4=11296.0,
)


class CostConfig:
    def __init__(self, **kwargs):
        """
        Coefficients of the expert-screening cost. Unspecified coefficients
        take the published challenge values of `DEFAULT_COST`.

        Parameters
        ----------
        c_algorithm : float
            Cost of running the algorithm, per patient
        c_treatment : float
            Cost per treated (true positive) patient
        c_error : float
            Cost per missed abnormal patient
        a0, a1, a2, a4 : float
            Expert cost per patient as a polynomial of the referral rate
        """
        unknown = set(kwargs) - set(DEFAULT_COST)
        if unknown:
            raise ConfigError("Unknown cost coefficients: {}"
                              .format(sorted(unknown)))
        values = dict(DEFAULT_COST)
        values.update(kwargs)
        for key, value in values.items():
            value = float(value)
            if not np.isfinite(value):
                raise ConfigError("Cost coefficient {} must be finite"
                                  .format(key))
            setattr(self, key, value)

    def as_dict(self):
        return {key: getattr(self, key) for key in DEFAULT_COST}

    @classmethod
    def from_file(cls, path):
        """
        Read coefficients from a YAML or JSON mapping, either at the top
        level or under `metrics.cost` of a run configuration
        """
        print("Loading cost configuration from: {}".format(path))
        if not os.path.exists(path):
            raise FileNotFoundError("File does not exist: {}".format(path))
        with open(path, 'r') as f:
            try:
                values = yaml.safe_load(f) or {}
            except yaml.YAMLError as err:
                raise ConfigError("Cannot parse {}: {}".format(path, err))
        if not isinstance(values, dict):
            raise ConfigError("{} does not hold a mapping".format(path))
        if isinstance(values.get('metrics'), dict):
            values = values['metrics'].get('cost', {})
        try:
            return cls(**values)
        except (TypeError, ValueError) as err:
            raise ConfigError("Invalid cost configuration {}: {}"
                              .format(path, err))

    def expert_cost_per_patient(self, referral_rate):
        x = referral_rate
        return self.a0 + self.a1 * x + self.a2 * x ** 2 + self.a4 * x ** 4


def screening_cost(counts, config=None):
    """
    Total cost of a screening cohort:
    c_algorithm * t + expert(s / t) * t + c_treatment * tp + c_error * fn,
    with t the cohort size and s the number of referred (predicted
    positive) patients.

    Parameters
    ----------
    counts : ConfusionCounts
    config : CostConfig

    Returns
    -------
    float
    """
    if config is None:
        config = CostConfig()
    t = counts.n
    s = counts.referred
    return float(
        config.c_algorithm * t
        + config.expert_cost_per_patient(s / t) * t
        + config.c_treatment * counts.tp
        + config.c_error * counts.fn
    )

from .mutual_information import (
    mutual_information, contingency_mutual_information, equal_frequency_bins
)
from .selection import SelectionModel, fit_selection, apply_selection
from .welfords import RunningStats

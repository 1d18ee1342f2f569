"""
Module for containing the binary `Classifier` implementations used by the
quality model. Each can be selected by class name through
`PCGLabPy.core.factory.ClassifierFactory`.
"""
from .tree import DecisionTree, grow_tree, TreeStructure
from .random_forest import RandomForest
from .gradient_boosting import GradientBoosting
from .svm import Svm, platt_scaling, kernel_matrix
from .voting import SoftVoting, fit_voting

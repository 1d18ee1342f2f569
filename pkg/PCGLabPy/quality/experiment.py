"""
The quality-train run: stratified split, feature extraction, model fit and
the held-out report with the numbers behind the ROC and ranking figures
"""
import os
import warnings
from PCGLabPy.core.io import write_json
from PCGLabPy.quality.features import feature_matrix
from PCGLabPy.quality.labels import (
    quality_labels, stratified_split, check_classes
)
from PCGLabPy.quality.model import (
    build_members, fit_quality_model, evaluate_quality
)
from PCGLabPy.utils.config import resolve_config, save_config
from PCGLabPy.utils.files import create_directory


def run_quality_experiment(manifest, config=None, threads=1):
    """
    Train the quality gate on the train half of a stratified split and
    evaluate every member on the held-out half.

    Parameters
    ----------
    manifest : Manifest
        Rows with quality scores
    config : dict
    threads : int

    Returns
    -------
    model : QualityModel
    report : dict
        "selected" holds the held-out metrics of the model; "all_features"
        those of the same ensemble trained without selection (when
        quality.compare_all_features is set)
    roc : pd.DataFrame or None
    ranking : pd.DataFrame
    """
    config = resolve_config(config)
    quality = config['quality']
    build_members(config)
    train, test = stratified_split(manifest, quality['test_fraction'],
                                   config['seed'])
    X = feature_matrix(manifest, quality['min_seconds'], threads)
    X_train = X.loc[train.paths]
    y_train = quality_labels(train)
    check_classes(y_train, minimum=1)
    print("[QualityModel] Training on {} recordings, {} held out"
          .format(len(train), len(test)))
    model = fit_quality_model(X_train, y_train, config)

    report = dict(
        n_train=len(train),
        n_test=len(test),
        seed=config['seed'],
        n_selected=len(model.selection.selected_names),
        selected_features=model.selection.selected_names,
    )
    roc = None
    if len(test) == 0:
        warnings.warn("Empty held-out split, no metrics reported",
                      UserWarning)
    else:
        X_test = X.loc[test.paths]
        y_test = quality_labels(test)
        report['selected'], roc = evaluate_quality(model, X_test, y_test)
        if quality['compare_all_features']:
            print("[QualityModel] Training on all features for comparison")
            full = fit_quality_model(X_train, y_train, config,
                                     keep_fraction=1.0)
            report['all_features'], _ = evaluate_quality(full, X_test,
                                                         y_test)
    return model, report, roc, model.selection.ranking_table()


def write_quality_experiment(output_dir, model, report, roc, ranking,
                             config):
    """
    Write the outputs of `run_quality_experiment` into a run directory
    """
    create_directory(output_dir)
    model_dir = os.path.join(output_dir, "quality_model")
    print("Writing quality model to: {}".format(model_dir))
    model.save(model_dir)
    path = os.path.join(output_dir, "report.json")
    print("Writing report to: {}".format(path))
    write_json(report, path)
    path = os.path.join(output_dir, "feature_ranking.csv")
    print("Writing feature ranking to: {}".format(path))
    ranking.to_csv(path, index=False, float_format='%.10g',
                   lineterminator='\n')
    if roc is not None:
        path = os.path.join(output_dir, "roc.csv")
        print("Writing ROC curve to: {}".format(path))
        roc.to_csv(path, index=False, float_format='%.10g',
                   lineterminator='\n')
    save_config(config, output_dir)

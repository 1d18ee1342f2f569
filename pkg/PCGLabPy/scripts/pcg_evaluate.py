"""
Executable for evaluating screening predictions against the outcome labels
of a manifest, including the expert-screening cost
"""
import argparse
import os
from argparse import ArgumentDefaultsHelpFormatter as Formatter
from PCGLabPy.core.io import Manifest, write_json
from PCGLabPy.metrics import (
    CostConfig, evaluate_run, read_predictions, write_predictions
)
from PCGLabPy.screening import ScreeningModel, predict_manifest
from PCGLabPy.utils.cli import handle_errors, add_config_argument
from PCGLabPy.utils.config import resolve_config, save_config


@handle_errors
def main():
    description = ('Evaluate a screening model (or an existing prediction '
                   'table) on a labelled manifest')
    parser = argparse.ArgumentParser(description=description,
                                     formatter_class=Formatter)
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('-M', '--model', dest='model_dir', action='store',
                        help='Directory of the screening model')
    source.add_argument('-p', '--predictions', dest='predictions_path',
                        action='store',
                        help='Prediction table (id, p_abnormal, label)')
    parser.add_argument('-m', '--manifest', dest='manifest_path',
                        action='store', required=True,
                        help='Path to the manifest with outcome labels')
    parser.add_argument('-o', '--output', dest='output_dir', action='store',
                        required=True,
                        help='Directory to store the metrics report')
    parser.add_argument('--cost-config', dest='cost_config_path',
                        action='store', default=None,
                        help='YAML/JSON cost coefficients (defaults to the '
                             'metrics.cost section of the config)')
    add_config_argument(parser)
    args = parser.parse_args()

    config = resolve_config(path=args.config_path)
    if args.cost_config_path:
        cost_config = CostConfig.from_file(args.cost_config_path)
    else:
        cost_config = CostConfig(**config['metrics']['cost'])
    manifest = Manifest.read(args.manifest_path)

    if args.model_dir:
        print("Loading screening model from: {}".format(args.model_dir))
        model = ScreeningModel.load(args.model_dir)
        predictions = predict_manifest(model, manifest)
        write_predictions(
            predictions, os.path.join(args.output_dir, "predictions.csv")
        )
    else:
        predictions = read_predictions(args.predictions_path)

    report = evaluate_run(predictions, manifest, cost_config)
    path = os.path.join(args.output_dir, "report.json")
    print("Writing report to: {}".format(path))
    write_json(report, path)
    save_config(config, args.output_dir)


if __name__ == '__main__':
    main()

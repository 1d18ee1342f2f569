"""
Executable for training the quality gate on an annotated manifest and
reporting its held-out performance
"""
import argparse
from argparse import ArgumentDefaultsHelpFormatter as Formatter
from PCGLabPy.core.io import Manifest
from PCGLabPy.quality import run_quality_experiment, write_quality_experiment
from PCGLabPy.utils.cli import (
    handle_errors, add_config_argument, add_threads_argument
)
from PCGLabPy.utils.config import resolve_config


@handle_errors
def main():
    description = ('Train the quality ensemble (MI feature selection, SVM, '
                   'RF, GB, soft voting) and evaluate it on a stratified '
                   'held-out split')
    parser = argparse.ArgumentParser(description=description,
                                     formatter_class=Formatter)
    parser.add_argument('-m', '--manifest', dest='manifest_path',
                        action='store', required=True,
                        help='Path to the manifest with quality scores')
    parser.add_argument('-o', '--output', dest='output_dir', action='store',
                        required=True,
                        help='Directory to store the model and the report')
    add_config_argument(parser)
    add_threads_argument(parser)
    args = parser.parse_args()

    config = resolve_config(path=args.config_path)
    manifest = Manifest.read(args.manifest_path)
    model, report, roc, ranking = run_quality_experiment(
        manifest, config, args.threads
    )
    write_quality_experiment(args.output_dir, model, report, roc, ranking,
                             config)


if __name__ == '__main__':
    main()

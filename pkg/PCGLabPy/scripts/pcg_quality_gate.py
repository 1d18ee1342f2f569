"""
Executable for gating a corpus with a trained quality model
"""
import argparse
from argparse import ArgumentDefaultsHelpFormatter as Formatter
from PCGLabPy.core.io import Manifest
from PCGLabPy.quality import (
    QualityModel, score_manifest, gate_manifest, write_gate
)
from PCGLabPy.utils.cli import (
    handle_errors, add_config_argument, add_threads_argument
)
from PCGLabPy.utils.config import resolve_config, save_config


@handle_errors
def main():
    description = ('Score every recording of a manifest with a quality '
                   'model and split the manifest into kept and removed '
                   'recordings')
    parser = argparse.ArgumentParser(description=description,
                                     formatter_class=Formatter)
    parser.add_argument('-M', '--model', dest='model_dir', action='store',
                        required=True,
                        help='Directory of the trained quality model')
    parser.add_argument('-m', '--manifest', dest='manifest_path',
                        action='store', required=True,
                        help='Path to the manifest to gate')
    parser.add_argument('-o', '--output', dest='output_dir', action='store',
                        required=True,
                        help='Directory to store the gated manifests')
    add_config_argument(parser)
    add_threads_argument(parser)
    args = parser.parse_args()

    config = resolve_config(path=args.config_path)
    print("Loading quality model from: {}".format(args.model_dir))
    model = QualityModel.load(args.model_dir)
    manifest = Manifest.read(args.manifest_path)
    scores = score_manifest(model, manifest, args.threads)
    kept, removed, report = gate_manifest(model, manifest, scores=scores)
    write_gate(args.output_dir, kept, removed, report, scores)
    save_config(config, args.output_dir)


if __name__ == '__main__':
    main()

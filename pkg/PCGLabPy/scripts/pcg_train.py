"""
Executable for training the screening model (outcome classification) on
top of a pretrained encoder
"""
import argparse
import os
import warnings
from argparse import ArgumentDefaultsHelpFormatter as Formatter
from PCGLabPy.core.io import Manifest
from PCGLabPy.nn import load_encoder
from PCGLabPy.nn.pretrain import encoder_config
from PCGLabPy.screening import train_screening, MODES, FUSIONS
from PCGLabPy.utils.cli import handle_errors, add_config_argument
from PCGLabPy.utils.config import resolve_config, save_config


@handle_errors
def main():
    description = ('Train the outcome classification head on log-mel '
                   'embeddings, optionally fused with socio-demographic '
                   'features')
    parser = argparse.ArgumentParser(description=description,
                                     formatter_class=Formatter)
    parser.add_argument('-m', '--manifest', dest='manifest_path',
                        action='store', required=True,
                        help='Path to the manifest with outcome labels')
    parser.add_argument('-e', '--encoder', dest='encoder_dir',
                        action='store', required=True,
                        help='Encoder checkpoint directory')
    parser.add_argument('-o', '--output', dest='output_dir', action='store',
                        required=True,
                        help='Directory to store the screening model')
    parser.add_argument('--mode', dest='mode', action='store',
                        default='frozen', choices=MODES,
                        help='Train the head on frozen embeddings or '
                             'fine-tune the encoder jointly')
    parser.add_argument('--fusion', dest='fusion', action='store',
                        default='audio', choices=FUSIONS,
                        help='Input modalities of the head')
    add_config_argument(parser)
    args = parser.parse_args()

    config = resolve_config(path=args.config_path)
    print("Loading encoder from: {}".format(args.encoder_dir))
    encoder, index = load_encoder(args.encoder_dir, encoder_config(config))
    if index.get('mel') and index['mel'] != config['mel']:
        warnings.warn("The encoder was pretrained with a different mel "
                      "configuration", UserWarning)
    norm_stats = index.get('norm_stats')
    if norm_stats is not None:
        norm_stats = tuple(norm_stats)
    manifest = Manifest.read(args.manifest_path)
    model, log = train_screening(manifest, encoder, config, args.mode,
                                 args.fusion, norm_stats)

    model_dir = os.path.join(args.output_dir, "model")
    print("Writing screening model to: {}".format(model_dir))
    model.save(model_dir)
    path = os.path.join(args.output_dir, "train_log.csv")
    print("Writing training log to: {}".format(path))
    log.to_csv(path, index=False, float_format='%.10g', lineterminator='\n')
    save_config(config, args.output_dir)


if __name__ == '__main__':
    main()

"""
Executable for self-supervised pretraining of the spectrogram encoder on
unlabelled corpora
"""
import argparse
import os
from argparse import ArgumentDefaultsHelpFormatter as Formatter
from PCGLabPy.core.io import Manifest
from PCGLabPy.nn import pretrain, save_encoder
from PCGLabPy.nn.pretrain import INIT_MODES
from PCGLabPy.utils.cli import handle_errors, add_config_argument
from PCGLabPy.utils.config import resolve_config, save_config


@handle_errors
def main():
    description = ('Pretrain the log-mel spectrogram encoder with bootstrap '
                   'self-supervision (two augmented views per recording)')
    parser = argparse.ArgumentParser(description=description,
                                     formatter_class=Formatter)
    parser.add_argument('-m', '--manifest', dest='manifest_paths',
                        action='store', nargs='+', required=True,
                        help='Paths to the unlabelled manifests')
    parser.add_argument('-o', '--output', dest='output_dir', action='store',
                        required=True,
                        help='Directory to store the encoder checkpoint')
    parser.add_argument('-i', '--init', dest='init', action='store',
                        default='random', choices=INIT_MODES,
                        help='Start from a random encoder or from the '
                             'checkpoint given by --checkpoint')
    parser.add_argument('--checkpoint', dest='checkpoint', action='store',
                        default=None,
                        help='Encoder checkpoint directory for '
                             '--init checkpoint')
    add_config_argument(parser)
    args = parser.parse_args()

    config = resolve_config(path=args.config_path)
    manifests = [Manifest.read(path) for path in args.manifest_paths]
    encoder, log, norm_stats = pretrain(
        manifests, config, init=args.init, checkpoint=args.checkpoint,
        output_dir=args.output_dir,
    )
    encoder_dir = os.path.join(args.output_dir, "encoder")
    print("Writing encoder checkpoint to: {}".format(encoder_dir))
    save_encoder(encoder_dir, encoder, config['mel'], norm_stats)
    path = os.path.join(args.output_dir, "loss_log.csv")
    print("Writing loss log to: {}".format(path))
    log.to_csv(path, index=False, float_format='%.10g', lineterminator='\n')
    save_config(config, args.output_dir)


if __name__ == '__main__':
    main()

"""
Executable for generating a labelled synthetic PCG corpus
"""
import argparse
from argparse import ArgumentDefaultsHelpFormatter as Formatter
from PCGLabPy.signal.synth import make_corpus
from PCGLabPy.utils.cli import handle_errors, add_config_argument
from PCGLabPy.utils.config import resolve_config, save_config


@handle_errors
def main():
    description = ('Synthesize heart-sound recordings with known quality '
                   'scores and outcomes, written as WAV files and a '
                   'manifest')
    parser = argparse.ArgumentParser(description=description,
                                     formatter_class=Formatter)
    parser.add_argument('-n', '--n', dest='n', action='store', type=int,
                        required=True, help='Number of recordings')
    parser.add_argument('-o', '--output', dest='output_dir', action='store',
                        required=True, help='Directory of the corpus')
    parser.add_argument('-s', '--seed', dest='seed', action='store',
                        type=int, default=None,
                        help='Seed of the corpus (overrides the config seed)')
    add_config_argument(parser)
    args = parser.parse_args()

    overrides = None if args.seed is None else dict(seed=args.seed)
    config = resolve_config(overrides, args.config_path)
    make_corpus(args.n, args.output_dir, seed=config['seed'])
    save_config(config, args.output_dir)


if __name__ == '__main__':
    main()

"""
Executable for preparing a corpus: resampling, replication padding and
chunking of every recording of a manifest (`io` config section)
"""
import argparse
import os
from argparse import ArgumentDefaultsHelpFormatter as Formatter
from PCGLabPy.core.io import Manifest
from PCGLabPy.signal.corpus import prepare_corpus
from PCGLabPy.utils.cli import handle_errors, add_config_argument
from PCGLabPy.utils.config import resolve_config, save_config


@handle_errors
def main():
    description = ('Resample, pad and/or chunk the recordings of a manifest, '
                   'writing the prepared WAV files and their manifest')
    parser = argparse.ArgumentParser(description=description,
                                     formatter_class=Formatter)
    parser.add_argument('-m', '--manifest', dest='manifest_path',
                        action='store', required=True,
                        help='Path to the input manifest CSV')
    parser.add_argument('-o', '--output', dest='output_dir', action='store',
                        required=True,
                        help='Directory of the prepared corpus')
    add_config_argument(parser)
    args = parser.parse_args()

    config = resolve_config(path=args.config_path)
    io = config['io']
    if not (io['target_rate_hz'] or io['min_seconds']
            or io['chunk_seconds']):
        print("No preparation step configured, recordings are copied")
    manifest = Manifest.read(args.manifest_path)
    prepare_corpus(
        manifest, args.output_dir,
        target_rate_hz=io['target_rate_hz'],
        min_seconds=io['min_seconds'],
        chunk_seconds=io['chunk_seconds'],
        wav_subtype=io['wav_subtype'],
    )
    save_config(config, args.output_dir)
    print("Prepared manifest: {}"
          .format(os.path.join(args.output_dir, "manifest.csv")))


if __name__ == '__main__':
    main()

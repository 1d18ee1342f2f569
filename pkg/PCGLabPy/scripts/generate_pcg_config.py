"""
Create a fresh run configuration holding every default, each section
preceded by its documentation.
"""
import argparse
from argparse import ArgumentDefaultsHelpFormatter as Formatter
import yaml
from PCGLabPy.utils.config import DEFAULT_CONFIG, dump_config, CONFIG_SECTIONS


def main():
    description = ('Create a yaml config file for use with the pcg_* '
                   'executables')
    parser = argparse.ArgumentParser(description=description,
                                     formatter_class=Formatter)
    parser.add_argument('-o', '--output', dest='output_path', action='store',
                        default='pcg_config.yml',
                        help='path to store the config file')
    parser.add_argument('--bare', dest='bare', action='store_true',
                        help='create the file without documentation')
    args = parser.parse_args()

    output_path = args.output_path

    with open(output_path, 'w', newline='\n') as f:
        if args.bare:
            for section in CONFIG_SECTIONS:
                f.write(yaml.safe_dump({section: DEFAULT_CONFIG[section]},
                                       default_flow_style=False))
        else:
            f.write(dump_config(DEFAULT_CONFIG))

    print("Config file created: {}".format(output_path))


if __name__ == '__main__':
    main()

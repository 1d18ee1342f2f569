import os
import numpy as np
import pandas as pd
from PCGLabPy.core.errors import (
    MissingColumn, BadScore, BadLabel, DuplicatePath
)
from PCGLabPy.utils.files import create_directory, relative_to

MANIFEST_COLUMNS = [
    'path', 'quality_score', 'outcome_label', 'sex', 'age_group',
    'height_cm', 'weight_kg', 'pregnant', 'split_tag',
]
OPTIONAL_COLUMNS = ['subject_id']
DEMOGRAPHIC_COLUMNS = [
    'sex', 'age_group', 'height_cm', 'weight_kg', 'pregnant'
]

OUTCOME_LABELS = ('normal', 'abnormal')
AGE_GROUPS = ('neonate', 'infant', 'child', 'adolescent')
_SEX_READ = {'f': 'female', 'female': 'female', 'm': 'male', 'male': 'male'}
_SEX_WRITE = {'female': 'F', 'male': 'M'}
_BOOL_READ = {'true': True, '1': True, 'yes': True,
              'false': False, '0': False, 'no': False}


def _missing(cell):
    return cell is None or (isinstance(cell, float) and np.isnan(cell)) \
        or (isinstance(cell, str) and cell.strip() == '')


def _parse_score(cell, row):
    if _missing(cell):
        return None
    try:
        value = float(cell)
    except ValueError:
        raise BadScore("Row {}: quality_score '{}' is not a number"
                       .format(row, cell))
    if not np.isfinite(value) or value != int(value) \
            or not 1 <= value <= 5:
        raise BadScore("Row {}: quality_score {} outside 1-5"
                       .format(row, cell))
    return int(value)


def _parse_choice(cell, choices, column, row):
    if _missing(cell):
        return None
    value = str(cell).strip().lower()
    if value not in choices:
        raise BadLabel("Row {}: {} '{}' not in {}"
                       .format(row, column, cell, list(choices)))
    return value


def _parse_positive(cell, column, row):
    if _missing(cell):
        return None
    try:
        value = float(cell)
    except ValueError:
        raise BadLabel("Row {}: {} '{}' is not a number"
                       .format(row, column, cell))
    if not value > 0:
        raise BadLabel("Row {}: {} must be positive, got {}"
                       .format(row, column, cell))
    return value


def _parse_sex(cell, row):
    if _missing(cell):
        return None
    try:
        return _SEX_READ[str(cell).strip().lower()]
    except KeyError:
        raise BadLabel("Row {}: sex '{}' not recognised".format(row, cell))


def _parse_bool(cell, column, row):
    if _missing(cell):
        return None
    try:
        return _BOOL_READ[str(cell).strip().lower()]
    except KeyError:
        raise BadLabel("Row {}: {} '{}' is not a boolean"
                       .format(row, column, cell))


class Manifest:
    def __init__(self, df, base_dir=''):
        """
        Table of recordings with their optional labels and
        socio-demographic fields.

        Parameters
        ----------
        df : pd.DataFrame
            Table with (at least) the columns of `MANIFEST_COLUMNS`.
            Cells are parsed and validated; missing values become None.
        base_dir : str
            Directory that relative recording paths are resolved against
        """
        missing = [c for c in MANIFEST_COLUMNS if c not in df.columns]
        if missing:
            raise MissingColumn("Manifest is missing columns: {}"
                                .format(missing))
        self.base_dir = base_dir
        self.df = self._validate(df)

    @staticmethod
    def _validate(df):
        columns = MANIFEST_COLUMNS + [
            c for c in OPTIONAL_COLUMNS if c in df.columns
        ]
        records = []
        for i, row in enumerate(df.to_dict('records')):
            path = row['path']
            if _missing(path):
                raise BadLabel("Row {}: empty path".format(i))
            record = dict(
                path=str(path).strip(),
                quality_score=_parse_score(row['quality_score'], i),
                outcome_label=_parse_choice(
                    row['outcome_label'], OUTCOME_LABELS, 'outcome_label', i
                ),
                sex=_parse_sex(row['sex'], i),
                age_group=_parse_choice(
                    row['age_group'], AGE_GROUPS, 'age_group', i
                ),
                height_cm=_parse_positive(row['height_cm'], 'height_cm', i),
                weight_kg=_parse_positive(row['weight_kg'], 'weight_kg', i),
                pregnant=_parse_bool(row['pregnant'], 'pregnant', i),
                split_tag=None if _missing(row['split_tag'])
                else str(row['split_tag']).strip(),
            )
            if 'subject_id' in columns:
                subject = row['subject_id']
                record['subject_id'] = None if _missing(subject) \
                    else str(subject).strip()
            records.append(record)

        out = pd.DataFrame(records, columns=columns, dtype=object)
        out = out.where(pd.notnull(out), None)
        duplicated = out['path'].duplicated(keep=False)
        if duplicated.any():
            raise DuplicatePath("Duplicate manifest paths: {}".format(
                sorted(set(out.loc[duplicated, 'path']))
            ))
        return out

    @classmethod
    def read(cls, path):
        """
        Read a manifest CSV (UTF-8, comma separated, header row; empty
        cells are missing values).

        Parameters
        ----------
        path : str

        Returns
        -------
        Manifest
        """
        print("Loading manifest from: {}".format(path))
        if not os.path.exists(path):
            raise FileNotFoundError("File does not exist: {}".format(path))
        df = pd.read_csv(path, dtype=str, keep_default_na=False,
                         encoding='utf-8')
        return cls(df, base_dir=os.path.dirname(os.path.abspath(path)))

    @classmethod
    def from_records(cls, records, base_dir=''):
        df = pd.DataFrame(list(records))
        for c in MANIFEST_COLUMNS:
            if c not in df.columns:
                df[c] = None
        return cls(df, base_dir=base_dir)

    def write(self, path):
        """
        Write the manifest with the fixed column order of
        `MANIFEST_COLUMNS` (followed by `subject_id` when present).
        """
        create_directory(os.path.dirname(path))
        print("Writing manifest to: {}".format(path))
        out = self.df.copy()
        out['quality_score'] = [
            '' if v is None else str(int(v)) for v in out['quality_score']
        ]
        out['sex'] = [_SEX_WRITE.get(v, '') for v in out['sex']]
        out['pregnant'] = [
            '' if v is None else ('true' if v else 'false')
            for v in out['pregnant']
        ]
        for c in ('height_cm', 'weight_kg'):
            out[c] = ['' if v is None else repr(float(v)) for v in out[c]]
        out = out.fillna('')
        out.to_csv(path, index=False, encoding='utf-8', lineterminator='\n')

    def __len__(self):
        return len(self.df)

    def __iter__(self):
        return iter(self.df.to_dict('records'))

    @property
    def paths(self):
        return list(self.df['path'])

    @property
    def has_subject_id(self):
        return 'subject_id' in self.df.columns

    @property
    def has_demographics(self):
        """
        True if any row carries at least one socio-demographic value.
        """
        return bool(self.df[DEMOGRAPHIC_COLUMNS].notnull().any().any())

    def resolve(self, path):
        """
        Absolute location of a recording listed in the manifest.
        """
        if os.path.isabs(path):
            return path
        return os.path.join(self.base_dir, path)

    def subset(self, mask):
        """
        New manifest holding the rows selected by a boolean mask or an
        index array, sharing `base_dir`.
        """
        mask = np.asarray(mask)
        if mask.dtype == bool:
            df = self.df[mask]
        else:
            df = self.df.iloc[mask]
        return Manifest(df.reset_index(drop=True), base_dir=self.base_dir)

    def rebase(self, base_dir):
        """
        Copy of the manifest whose relative paths are rewritten to be
        relative to `base_dir`, so it can be written elsewhere.
        """
        df = self.df.copy()
        df['path'] = [relative_to(self.resolve(p), base_dir)
                      for p in df['path']]
        return Manifest(df, base_dir=base_dir)

    def load(self, index):
        """
        Load the recording of row `index`.
        """
        from PCGLabPy.core.io.recording import load_wav
        row = self.df.iloc[index]
        subject = row['subject_id'] if self.has_subject_id else None
        return load_wav(self.resolve(row['path']), source_id=row['path'],
                        subject_id=subject)

from pathlib import Path
import datetime
import os
import json
import shutil

import numpy as np

from .. import __version__

__all__ = ['INDEX_FILENAME', 'to_jsonable', 'report_header', 'make_savepath', 'write_report',
           'write_table_csv', 'index_file', 'load_report', 'load_all_reports', 'load_index',
           'clear_reports', 'archive_reports']

INDEX_FILENAME = 'reports.txt'


def to_jsonable(value):
    '''Convert numpy scalars and arrays, tuples and complex numbers ([re, im]) for json.'''
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def report_header(stage, config=None):
    return {'version': __version__,
            'config': config.to_dict() if config is not None else None,
            'stage': stage}


def make_savepath(savepath = None, reset_index = False):
    '''Make the savepath and its report index.

    Args:
        savepath (PathLikeObject(str, pathlib.Path, etc...), optional): The savepath. Defaults to None.
        reset_index (bool, optional): Empty an existing index. Defaults to False.

    Returns:
        pathlib.Path: the savepath.
    '''
    if not savepath:
        savepath = Path.cwd() / 'pipeline_output'
    savepath = Path(savepath)

    if not os.path.exists(savepath):
        os.makedirs(savepath)

    if reset_index or not os.path.exists(savepath / INDEX_FILENAME):
        with open(savepath / INDEX_FILENAME, 'w') as fp:
            pass
    return savepath


def write_report(stage, report, config = None, savepath = None):
    '''Write one stage report as ``<stage>.json`` and append it to the index.

    Args:
        stage (str): The stage name.
        report (Dict): The report body.
        config (PipelineConfig, optional): Echoed into the header. Defaults to None.
        savepath (PathLikeObject(str, pathlib.Path, etc...), optional): The savepath. Defaults to None.

    Returns:
        pathlib.Path: the written file.
    '''
    savepath = make_savepath(savepath)
    document = {'header': report_header(stage, config)}
    document.update(to_jsonable(report))

    filename = savepath / f'{stage}.json'
    with open(filename, 'w') as fp:
        json.dump(document, fp, sort_keys=True, indent=2)

    with open(savepath / INDEX_FILENAME, 'a') as fp:
        fp.write(json.dumps({'stage': stage, 'file': filename.name,
                             'passed': document.get('passed')}, sort_keys=True) + '\n')
    return filename


def index_file(name, filename, savepath = None):
    '''Append a file written under the savepath by other means to the index.'''
    savepath = make_savepath(savepath)
    with open(savepath / INDEX_FILENAME, 'a') as fp:
        fp.write(json.dumps({'stage': name, 'file': Path(filename).name, 'passed': None}, sort_keys=True) + '\n')
    return savepath / Path(filename).name


def write_table_csv(name, table, savepath = None):
    '''Write a ContinuityTable as ``<name>.csv`` and append it to the index.'''
    savepath = make_savepath(savepath)
    filename = savepath / f'{name}.csv'
    table.save_csv(filename)
    return index_file(name, filename, savepath)


def load_report(stage, savepath = None):
    '''Load the report of one stage.'''
    if not savepath:
        savepath = Path.cwd() / 'pipeline_output'
    with open(Path(savepath) / f'{stage}.json', 'r') as fp:
        return json.load(fp)


def load_all_reports(savepath = None):
    '''Load all reports listed in the index, in the order they were written.

    Args:
        savepath (PathLikeObject(str, pathlib.Path, etc...), optional): The savepath. Defaults to None.

    Returns:
        List[Dict]: the reports.
    '''
    if not savepath:
        savepath = Path.cwd() / 'pipeline_output'
    savepath = Path(savepath)
    if not os.path.exists(savepath / INDEX_FILENAME):
        raise FileNotFoundError(f'No report index under {savepath}.')

    reports = []
    for entry in load_index(savepath):
        if not entry['file'].endswith('.json'):
            continue
        with open(savepath / entry['file'], 'r') as fp:
            reports.append(json.load(fp))
    return reports


def load_index(savepath = None):
    '''The index entries ({"stage", "file", "passed"}), or [] without an index.'''
    if not savepath:
        savepath = Path.cwd() / 'pipeline_output'
    savepath = Path(savepath)
    if not os.path.exists(savepath / INDEX_FILENAME):
        return []
    with open(savepath / INDEX_FILENAME, 'r') as fp:
        return [json.loads(line) for line in fp.read().strip().splitlines()]


def clear_reports(savepath = None):
    '''Remove every file listed in the index, then the index itself.'''
    if not savepath:
        savepath = Path.cwd() / 'pipeline_output'
    savepath = Path(savepath)
    if not os.path.exists(savepath / INDEX_FILENAME):
        return
    for entry in load_index(savepath):
        target = savepath / entry['file']
        if os.path.exists(target):
            os.remove(target)
    os.remove(savepath / INDEX_FILENAME)


def archive_reports(savepath = None, history_path = None):
    '''Move the indexed files and the index into a history folder.

    Args:
        savepath (PathLikeObject(str, pathlib.Path, etc...), optional): The savepath. Defaults to None.
        history_path (PathLikeObject(str, pathlib.Path, etc...), optional): The target folder.
            Defaults to history/<savepath name>_<datetime> under the current working directory.

    Returns:
        pathlib.Path: the history folder, or None when there is no index.
    '''
    if not savepath:
        savepath = Path.cwd() / 'pipeline_output'
    savepath = Path(savepath)
    entries = load_index(savepath)
    if not os.path.exists(savepath / INDEX_FILENAME):
        return None

    if not history_path:
        datetime_str = datetime.datetime.now().strftime(r'%Y%m%d-%H%M%S')
        history_path = Path.cwd() / 'history' / f'{savepath.name}_{datetime_str}'
    history_path = Path(history_path)
    os.makedirs(history_path, exist_ok=True)

    for entry in entries:
        source = savepath / entry['file']
        if os.path.exists(source):
            shutil.copy2(source, history_path / entry['file'])
    shutil.copy2(savepath / INDEX_FILENAME, history_path / INDEX_FILENAME)
    clear_reports(savepath)
    return history_path

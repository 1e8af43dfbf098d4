# Move the reports of the last run (as listed in reports.txt) into history/

from pathlib import Path
from carlesonlite import load_pipeline_config
from carlesonlite.pipeline import archive_reports, load_index

if __name__ == '__main__':

    config = load_pipeline_config(Path.cwd() / 'pipeline_config.json')
    savepath = Path(config.out_dir)
    count = len(load_index(savepath))

    history_path = archive_reports(savepath)
    if history_path is None:
        print(f'No report index under {savepath}!')
    else:
        print(f'Successfully moved {count} indexed files to {history_path}.')

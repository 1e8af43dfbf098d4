from pathlib import Path
from carlesonlite import StageFailure, load_pipeline_config, run_pipeline, load_all_reports

if __name__ == '__main__':

    config = load_pipeline_config(Path.cwd() / 'pipeline_config.json')
    try:
        summary = run_pipeline(config)
    except StageFailure as e:
        print(f'Failed: {e}')
        summary = None

    for report in load_all_reports(savepath = config.out_dir):
        stage = report['header']['stage']
        passed = report.get('passed')
        print(f'  {stage:16s} passed: {passed}')

    if summary is not None:
        print(f'All passed: {summary["all_passed"]}')

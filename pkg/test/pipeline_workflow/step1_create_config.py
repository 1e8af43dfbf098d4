# Default middle-thirds run: generation 4 nodes, p = 2, N = 2^16

from pathlib import Path
from carlesonlite import create_pipeline_config

if __name__ == '__main__':
    create_pipeline_config(Path.cwd() / 'pipeline_config.json',
                           ratio = 1 / 3,
                           depth = 6,
                           exponent = 2.0,
                           grid_size = 2 ** 16,
                           generation = 4,
                           epsilons = [0.1, 0.05],
                           seed = 0,
                           out_dir = 'pipeline_output')
    print('pipeline_config.json written.')

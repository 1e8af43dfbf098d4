from carlesonlite import create_pipeline_config

if __name__ == '__main__':

    # Cantor set: relative size of the removed middle, and number of removal rounds
    ratio = 1 / 3
    depth = 6

    # Weight w = d^p sampled on a grid of N points (N a power of two)
    exponent = 2.0
    grid_size = 2 ** 16

    # Nodes: endpoints of the arcs removed up to this generation, at most count_cap of them
    generation = 4
    count_cap = 64

    # Phase of the unimodular constant on the complement of S*H_1
    alpha_phase = 0.0

    # Thresholds of the kernel approximation certificate
    epsilons = [0.1]

    # Length of the (heuristic) orbit statistics
    orbit_steps = 1000

    # Every randomized check draws from this seed
    seed = 0

    # Reports are written here (relative to cwd)
    out_dir = 'pipeline_output'

    create_pipeline_config(ratio = ratio,
                           depth = depth,
                           exponent = exponent,
                           grid_size = grid_size,
                           generation = generation,
                           count_cap = count_cap,
                           alpha_phase = alpha_phase,
                           epsilons = epsilons,
                           orbit_steps = orbit_steps,
                           seed = seed,
                           out_dir = out_dir)

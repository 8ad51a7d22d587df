int hanle_cli_runner_stub;

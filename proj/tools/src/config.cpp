int hanle_cli_config_stub;

int hanle_cli_validate_stub;

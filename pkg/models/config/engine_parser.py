from .default_parser import default_config_parse, merge_config_and_args


def parser(app, engine_config, args={}):
    if engine_config is not None and not isinstance(engine_config, dict):
        raise TypeError("engine section must be a dictionary")

    if not app:
        raise Exception("No app is passed")

    config = merge_config_and_args(engine_config, args)

    # argparse hands booleans over as True, the file format uses 0 / 1
    if config.get("json") is True:
        config["json"] = 1

    default_config_parse(app, config)

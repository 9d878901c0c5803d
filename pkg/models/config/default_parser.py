def merge_config_and_args(section_config, args):
    """Values from the config file section, overridden by command line values that were given"""

    new_config = {}
    if section_config is not None:
        new_config = {**section_config}
    for (key, value) in args.items():
        if value is not None and value is not False:
            new_config[key] = value
    return new_config


def default_config_parse(app, config):
    """
    Requirements for engine options:
    - Update the command line arguments in models/AppConfig.py
    - Update the engine parser in models/config/engine_parser.py
    """

    def config_option_int(
        option_name: str = None, option_default: int = 0, store_name: str = None, value_min: int = None, value_max: int = None
    ) -> bool:
        if option_name is None or store_name is None:
            return False

        if option_name in config:
            if isinstance(config[option_name], int) and not isinstance(config[option_name], bool):
                if value_min is not None and config[option_name] < value_min:
                    raise TypeError(f"{option_name} is out of bounds")
                if value_max is not None and config[option_name] > value_max:
                    raise TypeError(f"{option_name} is out of bounds")
                setattr(app, store_name, int(config[option_name]))
            else:
                raise TypeError(f"{option_name} must be a number")
        else:
            setattr(app, store_name, option_default)  # default

        return True

    def config_option_float(
        option_name: str = None, option_default: float = 0.0, store_name: str = None, value_min: float = None, value_max: float = None
    ) -> bool:
        if option_name is None or store_name is None:
            return False

        if option_name in config:
            if isinstance(config[option_name], (int, float)) and not isinstance(config[option_name], bool):
                if value_min is not None and config[option_name] <= value_min:
                    raise TypeError(f"{option_name} is out of bounds")
                if value_max is not None and config[option_name] >= value_max:
                    raise TypeError(f"{option_name} is out of bounds")
                setattr(app, store_name, float(config[option_name]))
            else:
                raise TypeError(f"{option_name} must be a number")
        else:
            setattr(app, store_name, option_default)  # default

        return True

    def config_option_bool(option_name: str = None, option_default: bool = False, store_name: str = None) -> bool:
        if option_name is None or store_name is None:
            return False

        if option_name in config:
            if isinstance(config[option_name], int) and config[option_name] in [0, 1]:
                setattr(app, store_name, bool(config[option_name]))
            else:
                raise TypeError(f"{option_name} must be of type int (0 or 1)")
        else:
            setattr(app, store_name, option_default)  # default

        return True

    # seed is optional: None draws fresh entropy

    if "seed" in config and config["seed"] is not None:
        if not isinstance(config["seed"], int) or isinstance(config["seed"], bool) or config["seed"] < 0:
            raise TypeError("seed must be a non-negative integer")
        app.seed = config["seed"]

    # standard options

    config_option_int(option_name="cap", option_default=app.cap, store_name="cap", value_min=1)
    config_option_int(option_name="terms", option_default=app.terms, store_name="terms", value_min=1)
    config_option_int(option_name="max_snake_level", option_default=app.max_snake_level, store_name="max_snake_level", value_min=1)
    config_option_int(option_name="threads_hint", option_default=app.threads_hint, store_name="threads_hint", value_min=1)
    config_option_float(option_name="tolerance", option_default=app.tolerance, store_name="tolerance", value_min=0.0, value_max=1.0)
    config_option_bool(option_name="json", option_default=app.json, store_name="json")

""" Config class with slash-separated keys and a key=value file format """
from pprint import pformat

from .exceptions import ConfigError


class Config:
    """ Nested dict of experiment settings indexed by slash-separated keys

    Examples
    --------
    ::

        config = Config({'train/lr': 1e-4, 'train': {'tol': 1e-3}})
        config['train/lr']
        config.get('network/depth', default=3)
        config.flatten()    # {'train/lr': 0.0001, 'train/tol': 0.001}
    """

    class IAddDict(dict):
        """ dict that supports update via += """
        def __iadd__(self, other):
            if not isinstance(other, dict):
                raise TypeError(f"unsupported operand type(s) for +=: 'IAddDict' and '{type(other)}'")
            self.update(other)
            return self

    def __init__(self, config=None, **kwargs):
        """ Create Config

        Parameters
        ----------
        config : dict, list of pairs, Config or None
            keys with slashes are expanded into nested dicts;
            an instance of Config is shared, not copied
        kwargs
            more items to put into the config
        """
        if config is None:
            self.config = Config.IAddDict()
        elif isinstance(config, (dict, list)):
            self.config = self.parse(config)
        elif isinstance(config, Config):
            self.config = config.config
        else:
            raise TypeError(f'config must be dict, Config or list but {type(config)} was given')

        for key, value in kwargs.items():
            self.put(key, value)

    @staticmethod
    def _split(variable):
        parts = [part for part in variable.split('/') if part]
        return parts[:-1], parts[-1]

    def _lookup(self, variable, pop=False, **kwargs):
        prefix, name = self._split(variable)
        node = self.config
        for part in prefix:
            node = node.get(part) if isinstance(node, dict) else None
        if isinstance(node, dict) and name in node:
            return node.pop(name) if pop else node[name]
        if 'default' in kwargs:
            return kwargs['default']
        raise KeyError(f"Key '{variable}' not found")

    def get(self, variables, default=None):
        """ Returns a value, or a tuple of values when `variables` is a list """
        if isinstance(variables, (list, tuple)):
            return tuple(self._lookup(item, default=default) for item in variables)
        return self._lookup(variables, default=default)

    def pop(self, variables, **kwargs):
        """ Returns values and removes them from the config """
        if isinstance(variables, (list, tuple)):
            return tuple(self._lookup(item, pop=True, **kwargs) for item in variables)
        return self._lookup(variables, pop=True, **kwargs)

    def put(self, variable, value, config=None):
        """ Put a value under a slash-separated key, merging nested dicts """
        node = self.config if config is None else config
        if isinstance(value, Config):
            value = value.config
        elif isinstance(value, dict):
            value = self.parse(value)

        prefix, name = self._split(variable)
        for part in prefix:
            if not isinstance(node.get(part), dict):
                node[part] = Config.IAddDict()
            node = node[part]

        if isinstance(value, dict) and isinstance(node.get(name), dict):
            for key, item in Config(value).flatten().items():
                self.put(key, item, node[name])
        else:
            node[name] = value

    def parse(self, config):
        """ Expand a flat dict or a list of (key, value) pairs into nested dicts """
        if isinstance(config, Config):
            return config.config
        if isinstance(config, dict):
            items = config.items()
        elif isinstance(config, list):
            if any(len(item) != 2 for item in config):
                raise ValueError('tuples in list should represent pairs key-value'
                                 ', and therefore must be always the length of 2')
            items = config
        else:
            raise TypeError(f'config must be dict, Config or list but {type(config)} was given')

        new_config = Config.IAddDict()
        for key, value in items:
            if not isinstance(key, str):
                raise TypeError(f'only str keys are supported, "{key}" is of {type(key)} type')
            self.put(key, value, new_config)
        return new_config

    def flatten(self, config=None):
        """ Transforms nested dicts into a flat dict with slash-separated keys """
        config = self.config if config is None else config
        config = config.config if isinstance(config, Config) else config
        flat = Config.IAddDict()
        for key, value in config.items():
            if isinstance(value, dict) and value:
                for sub_key, sub_value in self.flatten(value).items():
                    flat[key + '/' + sub_key] = sub_value
            else:
                flat[key] = value
        return flat

    def update(self, other=None, **kwargs):
        """ Update config with values from other and kwargs """
        other = {} if other is None else other
        for key, value in Config(other).flatten().items():
            self.put(key, value)
        for key, value in kwargs.items():
            self.put(key, value)

    def copy(self):
        """ Deep copy of the nested structure (leaf values are shared) """
        return Config(dict(self.flatten()))

    def items(self, flatten=False):
        """ Config items, from the first level or flattened """
        return self.flatten().items() if flatten else self.config.items()

    def keys(self, flatten=False):
        """ Config keys, from the first level or flattened """
        return self.flatten().keys() if flatten else self.config.keys()

    def values(self, flatten=False):
        """ Config values, from the first level or flattened """
        return self.flatten().values() if flatten else self.config.values()

    def __add__(self, other):
        if isinstance(other, dict):
            other = Config(other)
        if isinstance(other, Config):
            return Config([*self.flatten().items(), *other.flatten().items()])
        return NotImplemented

    def __radd__(self, other):
        if isinstance(other, dict):
            other = Config(other)
        return other.__add__(self)

    def __getitem__(self, key):
        return self._lookup(key)

    def __setitem__(self, key, value):
        self.pop(key, default=None)
        self.put(key, value)

    def __delitem__(self, key):
        self.pop(key)

    def __contains__(self, key):
        try:
            self._lookup(key)
        except KeyError:
            return False
        return True

    def __getattr__(self, key):
        if key != 'config' and key in self.config:
            value = self.config[key]
            return Config(value) if isinstance(value, dict) else value
        raise AttributeError(key)

    def __getstate__(self):
        return vars(self)

    def __setstate__(self, state):
        vars(self).update(state)

    def __len__(self):
        return len(self.config)

    def __iter__(self):
        return iter(self.config)

    def __eq__(self, other):
        if isinstance(other, Config):
            return dict(self.flatten()) == dict(other.flatten())
        return NotImplemented

    def __repr__(self):
        lines = ['\n' + 4 * ' ' + line for line in pformat(self.config).split('\n')]
        return f"Config({''.join(lines)})"

    @classmethod
    def load(cls, path, defaults):
        """ Read a line-oriented `key = value` file on top of `defaults`

        Blank lines and text after `#` are ignored. Every key must be a flattened key of
        `defaults`; its value is coerced to the type of the default value.

        Parameters
        ----------
        path : str
            config file
        defaults : dict or Config
            allowed keys with their default values

        Returns
        -------
        Config
        """
        config = Config(defaults).copy()
        allowed = Config(defaults).flatten()
        with open(path, 'r') as file:
            for number, raw in enumerate(file, start=1):
                line = raw.split('#', 1)[0].strip()
                if not line:
                    continue
                if '=' not in line:
                    raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", path, number)
                key, value = (part.strip() for part in line.split('=', 1))
                key = '/'.join(filter(None, key.split('/')))
                if key not in allowed:
                    raise ConfigError(f'unknown key {key!r}', path, number)
                try:
                    config[key] = coerce_value(value, allowed[key])
                except ValueError as error:
                    raise ConfigError(f'bad value for {key!r}: {error}', path, number) from error
        return config

    def dump(self, path, header=None):
        """ Write the flattened config in the format read by :meth:`load` """
        with open(path, 'w') as file:
            if header:
                file.write(f'# {header}\n')
            for key, value in sorted(self.flatten().items()):
                file.write(f'{key} = {format_value(value)}\n')


def coerce_value(text, default):
    """ Convert config text to the type of `default` """
    if isinstance(default, bool):
        lowered = text.lower()
        if lowered in ('1', 'true', 'yes', 'on'):
            return True
        if lowered in ('0', 'false', 'no', 'off'):
            return False
        raise ValueError(f'{text!r} is not a boolean')
    if isinstance(default, (list, tuple)):
        items = [item.strip() for item in text.split(',') if item.strip()]
        if default:
            return [coerce_value(item, default[0]) for item in items]
        return items
    if isinstance(default, int):
        return int(float(text)) if 'e' in text.lower() else int(text)
    if isinstance(default, float):
        return float(text)
    if default is None:
        return text or None
    return text


def format_value(value):
    """ Inverse of :func:`coerce_value` """
    if isinstance(value, (list, tuple)):
        return ', '.join(format_value(item) for item in value)
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ''
    return str(value)

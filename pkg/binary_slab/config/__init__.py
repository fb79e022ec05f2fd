from binary_slab.config.loader import AppConfig, load_config_file, merge_settings

__all__ = ["AppConfig", "load_config_file", "merge_settings"]

import os
import yaml
from pathlib import Path
from typing import Dict, Any, Optional, List
from dataclasses import dataclass, field
from dotenv import load_dotenv

# Load .env file if it exists
load_dotenv()


DEFAULTS: Dict[str, Any] = {
    'precision': {'bits': 192, 'guard_bits': 16, 'cutoff_slack': 32},
    'caps': {'m1': 200000, 'm2': 1500, 'm3': 400, 'm4': 120},
    'execution': {'threads': 0, 'block_size': 64, 'progress_every': 500},
    'cache': {'enabled': True, 'dir': 'data/cache'},
    'reporting': {'format': 'csv', 'float_digits': 20},
    'thresholds': {'ir_divisor': 4, 'thp_divisor': 4},
    'newton': {
        'max_steps': 64,
        'grid_step': 0.125,
        'seeds_kept': 3,
        'imag_offsets': [0.0, 0.05, -0.05],
    },
    'stats': {'scan_bits': 64, 'fast_double': True, 'hist_bins': 60},
}


@dataclass
class PrecisionConfig:
    bits: int
    guard_bits: int = 16
    cutoff_slack: float = 32.0


@dataclass
class CapsConfig:
    by_dimension: Dict[int, int] = field(default_factory=dict)


@dataclass
class NewtonConfig:
    max_steps: int
    grid_step: float
    seeds_kept: int
    imag_offsets: List[float]


@dataclass
class ThresholdConfig:
    ir_divisor: int
    thp_divisor: int

    def ir_threshold(self, bits: int) -> float:
        return 2.0 ** (-bits / self.ir_divisor)

    def thp_threshold(self, bits: int) -> float:
        return 2.0 ** (-bits / self.thp_divisor)


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class Config:
    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or self._default_config_path()
        self.data = self._load_config()

    def _default_config_path(self) -> str:
        return str(Path(__file__).parent.parent.parent / "configs" / "default.yaml")

    def _load_config(self) -> Dict[str, Any]:
        config: Dict[str, Any] = {}
        if Path(self.config_path).exists():
            with open(self.config_path, 'r') as f:
                config = yaml.safe_load(f) or {}

        # Replace environment variables
        config = self._substitute_env_vars(config)
        return _merge(DEFAULTS, config)

    def _substitute_env_vars(self, config: Any) -> Any:
        if isinstance(config, dict):
            return {k: self._substitute_env_vars(v) for k, v in config.items()}
        elif isinstance(config, list):
            return [self._substitute_env_vars(item) for item in config]
        elif isinstance(config, str) and config.startswith('${') and config.endswith('}'):
            var_expr = config[2:-1]
            if ':-' in var_expr:
                var_name, default = var_expr.split(':-', 1)
                return os.getenv(var_name, default)
            return os.getenv(var_expr, config)
        return config

    def get(self, key: str, default: Any = None) -> Any:
        node: Any = self.data
        for part in key.split('.'):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def get_precision(self) -> PrecisionConfig:
        prec_cfg = self.data['precision']
        return PrecisionConfig(
            bits=int(prec_cfg['bits']),
            guard_bits=int(prec_cfg.get('guard_bits', 16)),
            cutoff_slack=float(prec_cfg.get('cutoff_slack', 32)),
        )

    def get_caps(self) -> CapsConfig:
        caps_cfg = self.data['caps']
        return CapsConfig(by_dimension={m: int(caps_cfg[f'm{m}']) for m in range(1, 5)})

    def get_newton(self) -> NewtonConfig:
        newton_cfg = self.data['newton']
        return NewtonConfig(
            max_steps=int(newton_cfg['max_steps']),
            grid_step=float(newton_cfg['grid_step']),
            seeds_kept=int(newton_cfg['seeds_kept']),
            imag_offsets=[float(v) for v in newton_cfg['imag_offsets']],
        )

    def get_thresholds(self) -> ThresholdConfig:
        thr_cfg = self.data['thresholds']
        return ThresholdConfig(
            ir_divisor=int(thr_cfg['ir_divisor']),
            thp_divisor=int(thr_cfg['thp_divisor']),
        )

    @property
    def execution(self) -> Dict[str, Any]:
        return self.data.get('execution', {})

    @property
    def cache(self) -> Dict[str, Any]:
        return self.data.get('cache', {})

    @property
    def reporting(self) -> Dict[str, Any]:
        return self.data.get('reporting', {})

    @property
    def stats(self) -> Dict[str, Any]:
        return self.data.get('stats', {})

from .spsa_adam import Hyper, OptimizerState, adam_update, sample_direction, spsa_gradient
from .trainer import Schedule, Stage, TrainResult, load_checkpoint, train

__all__ = [
    'Hyper',
    'OptimizerState',
    'sample_direction',
    'spsa_gradient',
    'adam_update',
    'Stage',
    'Schedule',
    'TrainResult',
    'train',
    'load_checkpoint',
]

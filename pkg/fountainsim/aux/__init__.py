from .tracker import Tracker

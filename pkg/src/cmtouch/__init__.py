"""cmtouch: cross-modal vision/touch representation learning on synthetic episodes."""

__version__ = "0.1.0"

METHODS = ("l3", "cmdc", "tcn", "cmc", "cm-cpc", "cm-cpc-h", "cm-gen")

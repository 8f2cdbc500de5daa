"""Section Burnside workbench: exact composition calculus for sections of
direct products of finite groups, their idempotent structure, and the
classification bookkeeping built on top."""

__version__ = "0.1.0"

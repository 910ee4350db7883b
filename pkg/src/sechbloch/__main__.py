"""Allow `python -m sechbloch`."""

from .cli import entrypoint

if __name__ == "__main__":
    entrypoint()

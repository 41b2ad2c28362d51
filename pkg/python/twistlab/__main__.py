"""Enable running twistlab as a module: python -m twistlab"""

from .cli import main

if __name__ == "__main__":
    main()

"""Entry point for running the app as a module"""

from .main import main

if __name__ == "__main__":
    main()

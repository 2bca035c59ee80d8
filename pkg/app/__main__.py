# app/__main__.py
import sys

from dotenv import load_dotenv

# Load environment variables from .env file for local development
load_dotenv()

from app.cli.parser import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())

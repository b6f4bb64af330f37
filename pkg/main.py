#!/usr/bin/env python3
"""
LieVerify - Main Entry Point
Batch verification of the algebraic lemmas from the command line
"""

import sys
import os

# Add the current directory to the path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

def main():
    """Main entry point for LieVerify"""
    try:
        from backend.cli import main as cli_main
    except ImportError as e:
        print(f"❌ Missing dependencies: {e}", file=sys.stderr)
        print("🔧 Please install required packages:", file=sys.stderr)
        print("   pip install -r requirements.txt", file=sys.stderr)
        sys.exit(1)

    sys.exit(cli_main(sys.argv[1:]))

if __name__ == "__main__":
    main()

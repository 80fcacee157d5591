"""Parses every SVG given on the command line as XML."""

import sys
import xml.etree.ElementTree as ET

bad = 0
for path in sys.argv[1:]:
    try:
        root = ET.parse(path).getroot()
        if root.tag != "{http://www.w3.org/2000/svg}svg":
            raise ValueError(f"root element is {root.tag}")
    except Exception as exc:  # noqa: BLE001
        print(f"{path}: {exc}")
        bad += 1
print(f"{len(sys.argv) - 1 - bad} of {len(sys.argv) - 1} files parse")
sys.exit(1 if bad else 0)

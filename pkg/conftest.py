import os
import sys

import django

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'nilauto', 'backend'))
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'nilauto.settings')
django.setup()

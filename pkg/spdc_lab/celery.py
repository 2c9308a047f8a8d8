import os
from celery import Celery

# Workers read the same Django settings as the commands.
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'spdc_lab.settings')

app = Celery('spdc_lab')

# CELERY_* settings configure broker, serialization and eager mode.
app.config_from_object('django.conf:settings', namespace='CELERY')

# Picks up amplitudes.tasks.
app.autodiscover_tasks()

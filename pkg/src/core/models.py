"""
Database models.
"""

from django.db import models


class RunRecord(models.Model):
    """
    One recorded solver run.
    """
    algorithm = models.CharField(max_length=64)
    recipe = models.CharField(max_length=255, blank=True)
    ranks = models.JSONField()
    oversampling = models.JSONField()
    power = models.PositiveIntegerField()
    realized_q = models.JSONField(null=True, blank=True)
    trial = models.PositiveIntegerField(default=0)
    seed = models.BigIntegerField()
    relative_error = models.FloatField(null=True, blank=True)
    seconds = models.FloatField(null=True, blank=True)
    alpha_final = models.JSONField(default=list, blank=True)
    shift_trace = models.JSONField(default=list, blank=True)
    counters = models.JSONField(default=dict, blank=True)
    failed = models.BooleanField(default=False)
    error = models.TextField(blank=True)
    created = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['id']

    def __str__(self):
        ranks = 'x'.join(str(r) for r in self.ranks)
        return f'{self.algorithm} r={ranks} seed={self.seed}'

# Generated by Django 5.1.6 on 2026-10-19 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='RunRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('algorithm', models.CharField(max_length=64)),
                ('recipe', models.CharField(blank=True, max_length=255)),
                ('ranks', models.JSONField()),
                ('oversampling', models.JSONField()),
                ('power', models.PositiveIntegerField()),
                ('realized_q', models.JSONField(blank=True, null=True)),
                ('trial', models.PositiveIntegerField(default=0)),
                ('seed', models.BigIntegerField()),
                ('relative_error', models.FloatField(blank=True, null=True)),
                ('seconds', models.FloatField(blank=True, null=True)),
                ('alpha_final', models.JSONField(blank=True, default=list)),
                ('shift_trace', models.JSONField(blank=True, default=list)),
                ('counters', models.JSONField(blank=True, default=dict)),
                ('failed', models.BooleanField(default=False)),
                ('error', models.TextField(blank=True)),
                ('created', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['id'],
            },
        ),
    ]

"""
File:           __init__.py
Created on:     12/10/26, 3:45 pm
"""
import datetime
import pytz


def utcnow() -> datetime.datetime:
    """ Return current timezone aware UTC time """
    return datetime.datetime.now(tz=pytz.utc)


def utc_isoformat(dt: datetime.datetime) -> str:
    """ Convert dt to UTC and format it for the run metadata sidecar """
    if dt.tzinfo is None:
        dt = pytz.utc.localize(dt)
    return dt.astimezone(pytz.utc).isoformat(timespec="seconds")

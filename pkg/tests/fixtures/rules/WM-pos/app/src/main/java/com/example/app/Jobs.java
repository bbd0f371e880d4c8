package com.example.app;

import android.app.job.JobInfo;
import android.app.job.JobScheduler;

public class Jobs {
    private JobScheduler scheduler;

    void schedule(JobInfo info) {
        scheduler.schedule(info);
    }
}

package com.example.app;

import okhttp3.OkHttpClient;

public class Api {
    OkHttpClient client(OkHttpClient shared) {
        OkHttpClient tuned = shared.newBuilder().build();
        return new OkHttpClient.Builder().build() == null ? tuned : shared;
    }
}
